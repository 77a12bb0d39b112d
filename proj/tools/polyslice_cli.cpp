// polyslice command-line front end.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyslice/closed_form.hpp"
#include "polyslice/extrema.hpp"
#include "polyslice/oracle.hpp"
#include "polyslice/suites.hpp"

using namespace polyslice;
using nlohmann::json;

namespace {

struct Options {
  std::string body = "simplex";
  int n = 3;
  double t = 0;
  std::string a;
  std::string method = "closed";
  std::string functional = "volume";
  std::string objective;
  int samples = 1000;
  int t_values = 5;
  int restarts = 64;
  std::uint64_t seed = 42;
  double tol = 1e-12;
  std::string format = "json";
  std::string out;
  bool timing = false;
  int n_min = 3, n_max = 6;
  std::string id;
  std::string suite;
};

Eigen::VectorXd parse_coords(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::DomainError, "bad coordinate '" + item + "'");
    }
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_vec(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IOError, "cannot open " + path);
  f << text;
  if (!f) throw Error(ErrorCode::IOError, "write failed: " + path);
}

Direction direction_arg(const Options& o, const Body& body) {
  if (o.a.empty()) return extremal_direction(body);
  return make_direction(parse_coords(o.a), body);
}

int cmd_eval(const Options& o) {
  Body body(parse_body(o.body), o.n);
  Functional f = parse_functional(o.functional);
  Direction a = direction_arg(o, body);
  SectionQuery q = make_query(body, a, o.t);
  json j{{"body", o.body}, {"n", o.n}, {"t", o.t}, {"a", to_vec(a.coords())}, {"functional", o.functional},
         {"regime", to_string(regime_check(q).tag)}, {"method", o.method}};
  if (o.method == "closed") {
    SectionValue v = f == Functional::Volume ? closed_A(q) : closed_P(q);
    j["value"] = v.value;
  } else if (o.method == "exact") {
    j["value"] = f == Functional::Volume ? section_volume_exact(q) : perimeter_exact(q);
  } else if (o.method == "integral") {
    SectionValue v = f == Functional::Volume ? analytic_A_integral(q) : analytic_P_integral(q);
    j["value"] = v.value;
  } else if (o.method == "mc") {
    if (f != Functional::Volume) throw Error(ErrorCode::Unsupported, "Monte Carlo estimates volumes only");
    Rng rng(o.seed);
    Estimate e = section_volume_mc(q, o.samples, 0, rng);
    j["value"] = e.value;
    j["std_error"] = e.std_error;
    j["samples"] = e.samples;
    j["hits"] = e.hits;
    j["seed"] = o.seed;
  } else {
    throw Error(ErrorCode::DomainError, "unknown method '" + o.method + "'");
  }
  write_text(j.dump(2) + "\n", o.out);
  return 0;
}

int emit_report(Report rep, const Options& o, double ms) {
  rep.runtime_ms = o.timing ? ms : 0;
  Format fmt = parse_format(o.format);
  if (o.out.empty()) std::cout << render(rep, fmt);
  else emit(rep, fmt, o.out);
  std::cerr << rep.suite << ": " << rep.summary.passed << " passed, " << rep.summary.failed << " failed\n";
  return all_pass(rep) ? 0 : 1;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_sweep(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  Body body(parse_body(o.body), o.n);
  Report rep = sweep_directions(body, o.t, parse_functional(o.functional), o.samples, o.seed);
  return emit_report(std::move(rep), o, elapsed_ms(t0));
}

int cmd_verify(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteConfig cfg;
  cfg.samples = o.samples;
  cfg.t_values = o.t_values;
  cfg.seed = o.seed;
  Report rep = run_suite(o.suite, o.n_min, o.n_max, cfg);
  return emit_report(std::move(rep), o, elapsed_ms(t0));
}

int cmd_counterexample(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  return emit_report(counterexample(o.id), o, elapsed_ms(t0));
}

json critical_json(const CriticalPoint& cp) {
  json j{{"a", to_vec(cp.a.coords())},
         {"classification", to_string(cp.classification)},
         {"second_order", cp.second_order},
         {"lambda", cp.lambda},
         {"apex", cp.apex},
         {"multiplicity", cp.multiplicity},
         {"hessian_eigenvalues", cp.hessian_eigenvalues},
         {"residual", cp.residual}};
  if (cp.mu) j["mu"] = *cp.mu;
  return j;
}

int cmd_extrema(const Options& o) {
  Body body(parse_body(o.body), o.n);
  Functional f = parse_functional(o.functional);
  ExtremaOptions opt;
  if (!o.objective.empty()) opt.objective = o.objective == "kernel" ? Objective::Kernel : Objective::Section;
  Rng rng(o.seed);
  MaximizeResult m = sphere_maximize(body, o.t, f, o.restarts, rng, opt);
  json j{{"body", o.body}, {"n", o.n}, {"t", o.t}, {"functional", o.functional}, {"seed", o.seed},
         {"best", to_vec(m.best.coords())}, {"value", m.value}};
  try {
    j["best_classification"] = critical_json(classify(body, m.best, o.t, f, opt));
  } catch (const Error& e) {
    j["best_classification"] = e.what();
  }
  json crit = json::array();
  if (!(body.kind() == BodyKind::CrossPolytope && f == Functional::Perimeter)) {
    for (const CriticalPoint& cp : structured_critical_points(body, o.t, f)) crit.push_back(critical_json(cp));
  }
  j["critical_points"] = crit;
  write_text(j.dump(2) + "\n", o.out);
  return 0;
}

int cmd_thresholds(const Options& o) {
  BodyKind kind = parse_body(o.body);
  Functional f = parse_functional(o.functional);
  ThresholdReport r = o.objective.empty()
                          ? threshold_scan(kind, f, o.n)
                          : threshold_scan(kind, f, o.n, o.objective == "kernel" ? Objective::Kernel : Objective::Section);
  json j{{"body", to_string(r.body)}, {"n", r.n}, {"functional", to_string(r.functional)},
         {"objective", to_string(r.objective)}, {"empirical", r.empirical}, {"lo", r.lo}, {"hi", r.hi}};
  if (std::isfinite(r.analytic)) {
    j["analytic"] = r.analytic;
    j["gap"] = r.gap;
  } else {
    j["analytic"] = nullptr;
    j["gap"] = nullptr;
  }
  write_text(j.dump(2) + "\n", o.out);
  return std::isfinite(r.gap) && r.gap > 1e-6 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperplane sections of the simplex, cross-polytope and cube"};
  app.require_subcommand(1);
  Options o;

  auto body_opts = [&](CLI::App* c) {
    c->add_option("--body", o.body, "simplex | crosspolytope | cube")->required();
    c->add_option("--n", o.n, "dimension")->required();
  };
  auto fmt_opts = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json | csv");
    c->add_option("--out", o.out, "output path (default stdout)");
    c->add_flag("--timing", o.timing, "record wall time in the report");
  };

  auto* eval = app.add_subcommand("eval", "evaluate A or P for one query");
  body_opts(eval);
  eval->add_option("--t", o.t)->required();
  eval->add_option("--a", o.a, "comma separated, normalized automatically (default: canonical)");
  eval->add_option("--method", o.method, "closed | exact | mc | integral");
  eval->add_option("--functional", o.functional, "volume | perimeter");
  eval->add_option("--samples", o.samples, "Monte Carlo samples");
  eval->add_option("--seed", o.seed);
  eval->add_option("--out", o.out);

  auto* sweep = app.add_subcommand("sweep", "random directions against the extremal value");
  body_opts(sweep);
  sweep->add_option("--t", o.t)->required();
  sweep->add_option("--functional", o.functional);
  sweep->add_option("--samples", o.samples);
  sweep->add_option("--seed", o.seed);
  fmt_opts(sweep);

  auto* extrema = app.add_subcommand("extrema", "multistart maximization and critical points");
  body_opts(extrema);
  extrema->add_option("--t", o.t)->required();
  extrema->add_option("--functional", o.functional);
  extrema->add_option("--restarts", o.restarts);
  extrema->add_option("--objective", o.objective, "section | kernel");
  extrema->add_option("--seed", o.seed);
  extrema->add_option("--out", o.out);

  auto* thr = app.add_subcommand("thresholds", "locate the local max/min switch numerically");
  body_opts(thr);
  thr->add_option("--functional", o.functional);
  thr->add_option("--objective", o.objective, "section | kernel");
  thr->add_option("--out", o.out);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite)->required()->check(CLI::IsMember(suite_ids()));
  verify->add_option("--n-min", o.n_min);
  verify->add_option("--n-max", o.n_max);
  verify->add_option("--samples", o.samples, "directions per (n, t)");
  verify->add_option("--t-values", o.t_values);
  verify->add_option("--seed", o.seed);
  fmt_opts(verify);

  auto* cex = app.add_subcommand("counterexample", "reproduce a counterexample");
  cex->add_option("--id", o.id)->required()->check(CLI::IsMember(counterexample_ids()));
  fmt_opts(cex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*sweep) return cmd_sweep(o);
    if (*extrema) return cmd_extrema(o);
    if (*thr) return cmd_thresholds(o);
    if (*verify) return cmd_verify(o);
    if (*cex) return cmd_counterexample(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
