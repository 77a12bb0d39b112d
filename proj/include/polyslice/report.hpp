#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace polyslice {

// le: value <= bound; ge: value >= bound; gt: value > bound (strict);
// eq: |value - bound| <= tol * max(1, |bound|).
// le/ge/gt are relative: violation = signed excess / |bound| (negative = slack).
enum class Relation { LE, GE, GT, EQ };
const char* to_string(Relation r);
Relation parse_relation(const std::string& s);

enum class Status { Check, Evidence };

struct CaseRecord {
  std::string body;
  int n = 0;
  double t = 0;
  std::vector<double> a;  // canonical direction
  std::string method;
  double value = 0;
  double bound = 0;
  Relation relation = Relation::LE;
  double tolerance = 0;
  Status status = Status::Check;
  // optional oracle cross-check of `value` (relative tolerance)
  std::optional<double> reference;
  double reference_tolerance = 0;
  std::string note;
  bool pass = false;

  bool operator==(const CaseRecord&) const = default;
};

struct Summary {
  int passed = 0;
  int failed = 0;
  double max_violation = 0;
  bool operator==(const Summary&) const = default;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 42;
  std::vector<CaseRecord> cases;
  Summary summary;
  double runtime_ms = 0;
  bool operator==(const Report&) const = default;
};

double violation(const CaseRecord& r);
bool recompute_pass(const CaseRecord& r);
// Fills r.pass for every record and the summary.
void finalize(Report& r);
bool all_pass(const Report& r);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string to_csv(const Report& r);

enum class Format { JSON, CSV };
Format parse_format(const std::string& s);
std::string render(const Report& r, Format f);
void emit(const Report& r, Format f, const std::string& path);

}  // namespace polyslice
