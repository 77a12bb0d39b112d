#include "polyslice/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "polyslice/error.hpp"

namespace polyslice {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LE: return "le";
    case Relation::GE: return "ge";
    case Relation::GT: return "gt";
    case Relation::EQ: return "eq";
  }
  return "?";
}

Relation parse_relation(const std::string& s) {
  if (s == "le") return Relation::LE;
  if (s == "ge") return Relation::GE;
  if (s == "gt") return Relation::GT;
  if (s == "eq") return Relation::EQ;
  throw Error(ErrorCode::DomainError, "unknown relation '" + s + "'");
}

double violation(const CaseRecord& r) {
  const double scale = std::max(std::abs(r.bound), 1e-300);
  double v = 0;
  switch (r.relation) {
    case Relation::LE: v = (r.value - r.bound) / scale; break;
    case Relation::GE: v = (r.bound - r.value) / scale; break;
    case Relation::GT: v = (r.bound - r.value) / scale; break;
    case Relation::EQ: v = std::abs(r.value - r.bound) / std::max(1.0, std::abs(r.bound)); break;
  }
  return v;
}

bool recompute_pass(const CaseRecord& r) {
  bool ok = false;
  const double scale = std::max(std::abs(r.bound), 1e-300);
  switch (r.relation) {
    case Relation::LE: ok = (r.value - r.bound) / scale <= r.tolerance; break;
    case Relation::GE: ok = (r.bound - r.value) / scale <= r.tolerance; break;
    case Relation::GT: ok = r.value > r.bound; break;
    case Relation::EQ: ok = std::abs(r.value - r.bound) <= r.tolerance * std::max(1.0, std::abs(r.bound)); break;
  }
  if (ok && r.reference) {
    double rs = std::max({std::abs(*r.reference), std::abs(r.value), 1e-300});
    ok = std::abs(r.value - *r.reference) / rs <= r.reference_tolerance;
  }
  return ok;
}

void finalize(Report& rep) {
  rep.summary = Summary{};
  bool first = true;
  for (auto& c : rep.cases) {
    c.pass = recompute_pass(c);
    if (c.status == Status::Evidence) continue;
    if (c.pass) ++rep.summary.passed;
    else ++rep.summary.failed;
    double v = violation(c);
    rep.summary.max_violation = first ? v : std::max(rep.summary.max_violation, v);
    first = false;
  }
}

bool all_pass(const Report& r) { return r.summary.failed == 0; }

nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json cases = json::array();
  for (const auto& c : r.cases) {
    json j = {{"body", c.body},
              {"n", c.n},
              {"t", c.t},
              {"a", c.a},
              {"method", c.method},
              {"value", c.value},
              {"bound", c.bound},
              {"relation", to_string(c.relation)},
              {"tolerance", c.tolerance},
              {"status", c.status == Status::Check ? "check" : "evidence"},
              {"reference", c.reference ? json(*c.reference) : json(nullptr)},
              {"reference_tolerance", c.reference_tolerance},
              {"note", c.note},
              {"pass", c.pass}};
    cases.push_back(std::move(j));
  }
  return json{{"suite", r.suite},
              {"seed", r.seed},
              {"cases", std::move(cases)},
              {"summary",
               {{"passed", r.summary.passed}, {"failed", r.summary.failed}, {"max_violation", r.summary.max_violation}}},
              {"runtime_ms", r.runtime_ms}};
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& c : j.at("cases")) {
    CaseRecord k;
    k.body = c.at("body").get<std::string>();
    k.n = c.at("n").get<int>();
    k.t = c.at("t").get<double>();
    k.a = c.at("a").get<std::vector<double>>();
    k.method = c.at("method").get<std::string>();
    k.value = c.at("value").get<double>();
    k.bound = c.at("bound").get<double>();
    k.relation = parse_relation(c.at("relation").get<std::string>());
    k.tolerance = c.at("tolerance").get<double>();
    k.status = c.at("status").get<std::string>() == "evidence" ? Status::Evidence : Status::Check;
    if (!c.at("reference").is_null()) k.reference = c.at("reference").get<double>();
    k.reference_tolerance = c.at("reference_tolerance").get<double>();
    k.note = c.at("note").get<std::string>();
    k.pass = c.at("pass").get<bool>();
    r.cases.push_back(std::move(k));
  }
  const auto& s = j.at("summary");
  r.summary.passed = s.at("passed").get<int>();
  r.summary.failed = s.at("failed").get<int>();
  r.summary.max_violation = s.at("max_violation").get<double>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
}

std::string to_csv(const Report& r) {
  std::string out = "suite,body,n,t,a_canonical,method,value,bound,pass\n";
  for (const auto& c : r.cases) {
    std::string a;
    for (size_t i = 0; i < c.a.size(); ++i) {
      if (i) a += ';';
      a += num(c.a[i]);
    }
    out += r.suite + ',' + c.body + ',' + std::to_string(c.n) + ',' + num(c.t) + ',' + a + ',' + c.method + ',' +
           num(c.value) + ',' + num(c.bound) + ',' +
           (c.status == Status::Evidence ? "evidence" : (c.pass ? "true" : "false")) + '\n';
  }
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::JSON;
  if (s == "csv") return Format::CSV;
  throw Error(ErrorCode::DomainError, "unknown format '" + s + "'");
}

std::string render(const Report& r, Format f) {
  return f == Format::JSON ? to_json(r).dump(2) + "\n" : to_csv(r);
}

void emit(const Report& r, Format f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IOError, "cannot open '" + path + "' for writing");
  os << render(r, f);
  if (!os) throw Error(ErrorCode::IOError, "write to '" + path + "' failed");
}

}  // namespace polyslice
