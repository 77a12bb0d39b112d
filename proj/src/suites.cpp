#include "polyslice/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "polyslice/closed_form.hpp"
#include "polyslice/extrema.hpp"
#include "polyslice/oracle.hpp"

namespace polyslice {

namespace {

constexpr int kExactLimit = 8;
constexpr int kClosedLimit = 12;
constexpr double kSweepTol = 1e-12;
constexpr double kReferenceTol = 1e-9;

std::vector<double> to_vec(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

struct Evaluation {
  double value;
  std::string method;
};

// Closed form wherever the regime allows it, exact oracle elsewhere.
Evaluation evaluate(const Body& body, const Direction& a, double t, Functional f) {
  SectionQuery q = make_query(body, a, t);
  Regime r = regime_check(q);
  if (r.tag == RegimeTag::Empty) return {0.0, "closed"};
  if (r.tag == RegimeTag::VertexSeparating) {
    try {
      return {f == Functional::Volume ? closed_A(q).value : closed_P(q).value, "closed"};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RegimeViolation) throw;
    }
  }
  return {f == Functional::Volume ? section_volume_exact(q) : perimeter_exact(q), "exact"};
}

double exact_value(const Body& body, const Direction& a, double t, Functional f) {
  SectionQuery q = make_query(body, a, t);
  return f == Functional::Volume ? section_volume_exact(q) : perimeter_exact(q);
}

CaseRecord record(const Body& body, double t, const Direction& a, std::string method, double value, double bound,
                  Relation rel, double tol) {
  CaseRecord c;
  c.body = to_string(body.kind());
  c.n = body.n();
  c.t = t;
  c.a = to_vec(canonicalize(a).coords());
  c.method = std::move(method);
  c.value = value;
  c.bound = bound;
  c.relation = rel;
  c.tolerance = tol;
  return c;
}

// Random symmetry of the body applied to x.
Eigen::VectorXd random_symmetry(const Body& body, Eigen::VectorXd x, Rng& rng) {
  std::vector<int> p(x.size());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  Eigen::VectorXd y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = x[p[i]];
  if (body.kind() != BodyKind::Simplex)
    for (Eigen::Index i = 0; i < y.size(); ++i)
      if (rng() & 1) y[i] = -y[i];
  return y;
}

// Half uniform, half a perturbation of the extremal direction.
Direction sweep_direction(const Body& body, int index, Rng& rng) {
  if (index % 2 == 0) return sample_direction(body, rng);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> u(0, 0.3);
  Eigen::VectorXd x = extremal_direction(body).coords();
  double sigma = u(rng);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += sigma * g(rng);
  return make_direction(random_symmetry(body, x, rng), body);
}

// count interior points of (lo, hi), midpoints of equal cells.
std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> ts;
  for (int i = 0; i < count; ++i) ts.push_back(lo + (hi - lo) * (i + 0.5) / count);
  return ts;
}

void check_limit(int n_max, int limit) {
  if (n_max > limit)
    throw Error(ErrorCode::ResourceLimit, "n = " + std::to_string(n_max) + " exceeds the desk limit " +
                                              std::to_string(limit));
}

struct SweepSpec {
  BodyKind kind;
  Functional f;
  int n_floor;
  // proven range minus the evidence-only part; evidence range may be empty
  std::function<ValidityRange(const Body&)> proven;
  std::function<ValidityRange(const Body&)> evidence;
};

ValidityRange no_range() { return {1, true, 0}; }

void sweep_range(Report& rep, const Body& body, Functional f, const ValidityRange& r, bool evidence,
                 const SuiteConfig& cfg, Rng& rng) {
  if (r.lo > r.hi) return;
  std::uniform_real_distribution<double> u01(0, 1);
  const bool spot = body.n() <= kExactLimit;
  for (double t : grid(r.lo, r.hi, cfg.t_values)) {
    const double best = extremal_value(body, t, f).value;
    const Direction canon = extremal_direction(body);
    // the maximal value must be the closed form at the canonical direction
    CaseRecord m = record(body, t, canon, "closed", evaluate(body, canon, t, f).value, best, Relation::EQ, 1e-12);
    m.note = "extremal value";
    if (evidence) m.status = Status::Evidence;
    rep.cases.push_back(std::move(m));
    for (int s = 0; s < cfg.samples; ++s) {
      Direction a = sweep_direction(body, s, rng);
      Evaluation e = evaluate(body, a, t, f);
      CaseRecord c = record(body, t, a, e.method, e.value, best, Relation::LE, kSweepTol);
      if (evidence) c.status = Status::Evidence;
      if (spot && e.method == "closed" && e.value > 0 && u01(rng) < cfg.spot_check_fraction) {
        c.reference = exact_value(body, a, t, f);
        c.reference_tolerance = kReferenceTol;
        c.method = "closed+exact";
      }
      rep.cases.push_back(std::move(c));
    }
  }
}

Report sweep_suite(const std::string& id, const SweepSpec& spec, int n_min, int n_max, const SuiteConfig& cfg) {
  Report rep;
  rep.suite = id;
  rep.seed = cfg.seed;
  Rng rng(cfg.seed);
  for (int n = std::max(n_min, spec.n_floor); n <= n_max; ++n) {
    Body body(spec.kind, n);
    sweep_range(rep, body, spec.f, spec.proven(body), false, cfg, rng);
    if (spec.evidence) sweep_range(rep, body, spec.f, spec.evidence(body), true, cfg, rng);
  }
  return rep;
}

// Local classification at the canonical direction over t-grids.
struct LocalBand {
  double lo, hi;
  Classification expect;
};

Report local_suite(const std::string& id, BodyKind kind, Functional f, int n_min, int n_max,
                   const std::function<std::vector<LocalBand>(const Body&)>& bands, const SuiteConfig& cfg) {
  Report rep;
  rep.suite = id;
  rep.seed = cfg.seed;
  for (int n = std::max(n_min, 2); n <= n_max; ++n) {
    Body body(kind, n);
    const Direction canon = extremal_direction(body);
    for (const LocalBand& b : bands(body)) {
      if (b.lo >= b.hi) continue;
      for (double t : grid(b.lo, b.hi, cfg.t_values)) {
        CaseRecord c = record(body, t, canon, "fd-hessian", -1, static_cast<double>(b.expect), Relation::EQ, 0);
        try {
          CriticalPoint cp = classify(body, canon, t, f);
          c.value = static_cast<double>(cp.classification);
          c.note = std::string(to_string(cp.classification)) + " expected " + to_string(b.expect);
        } catch (const Error& e) {
          c.note = e.what();
        }
        rep.cases.push_back(std::move(c));
      }
    }
  }
  return rep;
}

Report prop32_suite(int n_min, int n_max, const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "prop32";
  rep.seed = cfg.seed;
  Rng rng(cfg.seed);
  for (int n = std::max(n_min, 3); n <= n_max; ++n) {
    Body body(BodyKind::CrossPolytope, n);
    const double bound = std::sqrt(n / (n - 1.0)) * extremal_value(body, 0, Functional::Perimeter).value;
    for (int s = 0; s < cfg.samples; ++s) {
      Direction a = sweep_direction(body, s, rng);
      rep.cases.push_back(
          record(body, 0, a, "exact", perimeter_exact(make_query(body, a, 0)), bound, Relation::LE, kSweepTol));
    }
  }
  return rep;
}

double simplex_two_coordinate_central_perimeter(int n) {
  double g = std::tgamma(n - 1.0);
  return std::sqrt(n - 1.0) / g * (std::sqrt(n * (n - 1.0)) / std::sqrt(2.0) + 1);
}

Report central_perimeter_suite(int n_min, int n_max, const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "central-perimeter";
  rep.seed = cfg.seed;
  Rng rng(cfg.seed);
  for (int n = std::max(n_min, 3); n <= n_max; ++n) {
    Body body(BodyKind::Simplex, n);
    const double p2 = simplex_two_coordinate_central_perimeter(n);
    const double bound = (1 + 1.0 / n) * p2;
    Direction two = canonical_direction(body, Canonical::TwoCoordinate);
    CaseRecord ref = record(body, 0, two, "exact", perimeter_exact(make_query(body, two, 0)), p2, Relation::EQ, 1e-9);
    ref.note = "two-coordinate central perimeter";
    rep.cases.push_back(std::move(ref));
    for (int s = 0; s < cfg.samples; ++s) {
      Direction a = s % 2 ? make_direction(random_symmetry(body, two.coords() + 0.2 * sample_direction(body, rng).coords(), rng), body)
                          : sample_direction(body, rng);
      rep.cases.push_back(
          record(body, 0, a, "exact", perimeter_exact(make_query(body, a, 0)), bound, Relation::LE, kSweepTol));
    }
  }
  return rep;
}

Report prop44_suite(int n_min, int n_max, const SuiteConfig& cfg) {
  Report rep;
  rep.suite = "prop44";
  rep.seed = cfg.seed;
  Rng rng(cfg.seed);
  for (int n = std::max(n_min, 3); n <= n_max; ++n) {
    Body body(BodyKind::Cube, n);
    const double lower = n / 17.0;
    const double upper = 2 * ((n - 2) * std::sqrt(2.0) + 1);
    double best = std::numeric_limits<double>::infinity();
    Direction arg = extremal_direction(body);
    for (int s = 0; s < cfg.samples; ++s) {
      Direction a = sweep_direction(body, s, rng);
      double p = perimeter_exact(make_query(body, a, 0.5));
      rep.cases.push_back(record(body, 0.5, a, "exact", p, lower, Relation::GE, kSweepTol));
      rep.cases.push_back(record(body, 0.5, a, "exact", p, upper, Relation::LE, kSweepTol));
      if (p < best) {
        best = p;
        arg = a;
      }
    }
    CaseRecord m = record(body, 0.5, arg, "exact", best, lower, Relation::GE, kSweepTol);
    m.status = Status::Evidence;
    m.note = "empirical minimizer";
    rep.cases.push_back(std::move(m));
  }
  return rep;
}

const std::map<std::string, SweepSpec>& sweep_specs() {
  static const std::map<std::string, SweepSpec> specs = [] {
    std::map<std::string, SweepSpec> m;
    auto range = [](Functional f) { return [f](const Body& b) { return extremal_range(b, f); }; };
    m["thm1"] = {BodyKind::Simplex, Functional::Volume, 2, range(Functional::Volume), nullptr};
    m["thm2"] = {BodyKind::Simplex, Functional::Perimeter, 4, range(Functional::Perimeter), nullptr};
    m["eq32"] = {BodyKind::CrossPolytope, Functional::Volume, 2, range(Functional::Volume), nullptr};
    m["thm3"] = {BodyKind::CrossPolytope, Functional::Perimeter, 3, range(Functional::Perimeter),
                 [](const Body& b) {
                   return b.n() == 3 ? ValidityRange{1 / std::sqrt(2.0), true, 0.8} : no_range();
                 }};
    m["thm4"] = {BodyKind::Cube, Functional::Volume, 2, range(Functional::Volume), nullptr};
    m["thm5"] = {BodyKind::Cube, Functional::Perimeter, 3, range(Functional::Perimeter),
                 [](const Body& b) {
                   return b.n() == 3 ? ValidityRange{1 / std::sqrt(2.0), true, thresholds(b).t0} : no_range();
                 }};
    return m;
  }();
  return specs;
}

using Bands = std::function<std::vector<LocalBand>(const Body&)>;

// Bands keep a margin of 2% of their width away from the thresholds.
std::vector<LocalBand> shrink(std::vector<LocalBand> v) {
  for (auto& b : v) {
    double w = b.hi - b.lo;
    b.lo += 0.02 * w;
    b.hi -= 0.02 * w;
  }
  return v;
}

struct LocalSpec {
  BodyKind kind;
  Functional f;
  Bands bands;
};

const std::map<std::string, LocalSpec>& local_specs() {
  using C = Classification;
  static const std::map<std::string, LocalSpec> specs = [] {
    std::map<std::string, LocalSpec> m;
    m["prop1"] = {BodyKind::Simplex, Functional::Volume, [](const Body& b) {
                    if (b.n() < 3) return std::vector<LocalBand>{};
                    ConstantsTable c = thresholds(b);
                    return shrink({{c.c_volume, c.d, C::LocalMax}, {c.lower, c.c_volume, C::LocalMin}});
                  }};
    m["prop2"] = {BodyKind::Simplex, Functional::Perimeter, [](const Body& b) {
                    if (b.n() < 4) return std::vector<LocalBand>{};
                    ConstantsTable c = thresholds(b);
                    return shrink({{c.c_perimeter, c.d, C::LocalMax}});
                  }};
    m["prop3"] = {BodyKind::CrossPolytope, Functional::Volume, [](const Body& b) {
                    const double n = b.n();
                    if (b.n() == 2) return shrink({{0, 0.75, C::LocalMin}});
                    return shrink({{3 / (n + 2), 1 / std::sqrt(2.0), C::LocalMax}, {0, 3 / (n + 2), C::LocalMin}});
                  }};
    m["prop4"] = {BodyKind::Cube, Functional::Volume, [](const Body& b) {
                    const double n = b.n();
                    if (b.n() >= 5) return shrink({{(n - 2) / (2 * std::sqrt(n)), std::sqrt(n - 1) / 2, C::LocalMax}});
                    if (b.n() == 4) return shrink({{0.625, 1, C::LocalMax}, {0.5, 0.625, C::LocalMin}});
                    if (b.n() == 3)
                      return shrink({{1 / std::sqrt(3.0), 0.98 * std::sqrt(3.0) / 2, C::LocalMax},
                                     {0.5 / std::sqrt(3.0), 1 / std::sqrt(3.0), C::LocalMin}});
                    return std::vector<LocalBand>{};
                  }};
    m["prop5"] = {BodyKind::Cube, Functional::Perimeter, [](const Body& b) {
                    const double n = b.n();
                    if (b.n() >= 6) return shrink({{(n - 2) / (2 * std::sqrt(n)), std::sqrt(n - 1) / 2, C::LocalMax}});
                    if (b.n() == 5) return shrink({{7 / (4 * std::sqrt(5.0)), 1, C::LocalMax}});
                    if (b.n() == 4) return shrink({{0.75, std::sqrt(3.0) / 2, C::LocalMax}});
                    if (b.n() == 3) {
                      ConstantsTable c = thresholds(b);
                      return shrink({{c.p3_switch, c.t0, C::LocalMax}, {1 / std::sqrt(3.0), c.p3_switch, C::LocalMin}});
                    }
                    return std::vector<LocalBand>{};
                  }};
    m["cor1"] = {BodyKind::CrossPolytope, Functional::Perimeter, [](const Body& b) {
                   if (b.n() < 6) return std::vector<LocalBand>{};
                   return shrink({{4.0 / b.n(), 1 / std::sqrt(2.0), C::LocalMax}});
                 }};
    return m;
  }();
  return specs;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {"thm1",  "thm2",  "thm3",  "thm4",  "thm5",   "eq32",
                                               "prop1", "prop2", "prop3", "prop4", "prop5",  "cor1",
                                               "prop32", "prop44", "central-perimeter"};
  return ids;
}

Report run_suite(const std::string& id, int n_min, int n_max, const SuiteConfig& cfg) {
  if (std::find(suite_ids().begin(), suite_ids().end(), id) == suite_ids().end())
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + id + "'");
  if (n_min < 2 || n_min > n_max) throw Error(ErrorCode::DomainError, "bad n range");
  if (cfg.samples < 0 || cfg.t_values < 1) throw Error(ErrorCode::DomainError, "bad suite config");
  Report rep;
  if (auto it = sweep_specs().find(id); it != sweep_specs().end()) {
    check_limit(n_max, kClosedLimit);
    rep = sweep_suite(id, it->second, n_min, n_max, cfg);
  } else if (auto jt = local_specs().find(id); jt != local_specs().end()) {
    check_limit(n_max, kClosedLimit);
    rep = local_suite(id, jt->second.kind, jt->second.f, n_min, n_max, jt->second.bands, cfg);
  } else {
    check_limit(n_max, kExactLimit);
    if (id == "prop32") rep = prop32_suite(n_min, n_max, cfg);
    else if (id == "prop44") rep = prop44_suite(n_min, n_max, cfg);
    else rep = central_perimeter_suite(n_min, n_max, cfg);
  }
  finalize(rep);
  return rep;
}

Report sweep_directions(const Body& body, double t, Functional f, int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::DomainError, "samples must be >= 1");
  Report rep;
  rep.suite = "sweep";
  rep.seed = seed;
  Rng rng(seed);
  const double best = extremal_value(body, t, f).value;
  for (int s = 0; s < samples; ++s) {
    Direction a = sweep_direction(body, s, rng);
    Evaluation e = evaluate(body, a, t, f);
    rep.cases.push_back(record(body, t, a, e.method, e.value, best, Relation::LE, kSweepTol));
  }
  finalize(rep);
  return rep;
}

const std::vector<std::string>& counterexample_ids() {
  static const std::vector<std::string> ids = {"simplex-n2-volume", "simplex-n3-perimeter-edge",
                                               "xpoly-explicit-tilde", "cube-n3-perimeter-localmin",
                                               "cube-n4-volume-localmin"};
  return ids;
}

namespace {

Report simplex_n2_volume() {
  Report rep;
  rep.suite = "simplex-n2-volume";
  Body body(BodyKind::Simplex, 2);
  const double t = 0.45;
  // maximizer of sqrt(3)(a1 - t)/(3 a1^2 - 1/2); a2, a3 solve x^2 + a1 x + (2 a1^2 - 1)/2 = 0
  const double a1 = t + std::sqrt(t * t - 1.0 / 6);
  const double disc = std::sqrt(a1 * a1 - 2 * (2 * a1 * a1 - 1));
  Eigen::VectorXd x(3);
  x << a1, (-a1 + disc) / 2, (-a1 - disc) / 2;
  Direction a = make_direction(x, body);
  Direction canon = extremal_direction(body);
  const double va = section_volume_exact(make_query(body, a, t));
  const double vc = section_volume_exact(make_query(body, canon, t));
  CaseRecord c = record(body, t, a, "exact", va, vc, Relation::GT, 0);
  c.note = "A(a,t) > A(a^(2),t)";
  rep.cases.push_back(std::move(c));
  return rep;
}

Report simplex_n3_perimeter_edge() {
  Report rep;
  rep.suite = "simplex-n3-perimeter-edge";
  Body body(BodyKind::Simplex, 3);
  const double eps = 0.01;
  const double w = std::sqrt(1 + 8 * eps * eps);
  Eigen::VectorXd x(4);
  x << 0.5 + 2 * eps, 0.5 - 2 * eps, -0.5, -0.5;
  Direction a = make_direction(x / w, body);
  const double t = 0.5 * w;
  Direction canon = extremal_direction(body);
  const double pa = perimeter_exact(make_query(body, a, t));
  const double pc = perimeter_exact(make_query(body, canon, t));
  CaseRecord c = record(body, t, a, "exact", pa, pc, Relation::GT, 0);
  c.note = "P(a_eps,t) > P(a^(3),t)";
  rep.cases.push_back(std::move(c));

  // limiting value at t = 1/2 against the printed and the corrected constant
  const double p_half = perimeter_exact(make_query(body, canon, 0.5));
  CaseRecord printed = record(body, 0.5, canon, "exact", p_half, 9.0 / 4 - 0.75 * std::sqrt(6.0), Relation::EQ, 1e-9);
  printed.status = Status::Evidence;
  printed.note = "printed constant 9/4 - 3 sqrt(6)/4";
  rep.cases.push_back(std::move(printed));
  CaseRecord fixed = record(body, 0.5, canon, "exact", p_half, (9 * std::sqrt(2.0) - 3 * std::sqrt(6.0)) / 4,
                            Relation::EQ, 1e-9);
  fixed.status = Status::Evidence;
  fixed.note = "corrected constant (9 sqrt(2) - 3 sqrt(6))/4";
  rep.cases.push_back(std::move(fixed));
  CaseRecord edge = record(body, t, a, "exact", pa, std::sqrt(2.0), Relation::LE, 1e-12);
  edge.status = Status::Evidence;
  edge.note = "edge section perimeter below sqrt(2)";
  rep.cases.push_back(std::move(edge));
  return rep;
}

Report xpoly_tilde() {
  Report rep;
  rep.suite = "xpoly-explicit-tilde";
  const int n = 5;
  Body body(BodyKind::CrossPolytope, n);
  const double t = 2.0 / n;
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 2.0 / n);
  x[0] = 1 - 2.0 / n;
  Direction a = make_direction(x, body);
  Direction e1 = extremal_direction(body);
  const double va = section_volume_exact(make_query(body, a, t));
  const double ve = closed_A(make_query(body, e1, t)).value;
  CaseRecord c = record(body, t, a, "exact", va, ve, Relation::GT, 0);
  c.note = "A(a~,2/n) > A(e_1,2/n)";
  rep.cases.push_back(std::move(c));
  CaseRecord r = record(body, t, a, "exact", va / ve, 5.0 / 3, Relation::EQ, 1e-9);
  r.note = "ratio n/(n-2)";
  rep.cases.push_back(std::move(r));
  return rep;
}

// Canonical direction is a local minimum: classification plus a nearby
// direction with a strictly larger value.
Report local_min_case(const std::string& id, BodyKind kind, int n, double t, Functional f) {
  Report rep;
  rep.suite = id;
  Body body(kind, n);
  Direction canon = extremal_direction(body);
  CaseRecord cls = record(body, t, canon, "fd-hessian", -1, static_cast<double>(Classification::LocalMin),
                          Relation::EQ, 0);
  try {
    CriticalPoint cp = classify(body, canon, t, f);
    cls.value = static_cast<double>(cp.classification);
    cls.note = to_string(cp.classification);
  } catch (const Error& e) {
    cls.note = e.what();
  }
  rep.cases.push_back(std::move(cls));

  const double base = evaluate(body, canon, t, f).value;
  Rng rng(rep.seed);
  std::normal_distribution<double> g(0, 1);
  double best = -1;
  Direction arg = canon;
  for (int s = 0; s < 64; ++s) {
    Eigen::VectorXd x = canon.coords();
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += 0.02 * g(rng);
    Direction a = make_direction(x, body);
    double v = evaluate(body, a, t, f).value;
    if (v > best) {
      best = v;
      arg = a;
    }
  }
  CaseRecord c = record(body, t, arg, "exact", exact_value(body, arg, t, f), base, Relation::GT, 0);
  c.note = "nearby direction beats the main diagonal";
  rep.cases.push_back(std::move(c));
  return rep;
}

}  // namespace

Report counterexample(const std::string& id) {
  Report rep;
  if (id == "simplex-n2-volume") rep = simplex_n2_volume();
  else if (id == "simplex-n3-perimeter-edge") rep = simplex_n3_perimeter_edge();
  else if (id == "xpoly-explicit-tilde") rep = xpoly_tilde();
  else if (id == "cube-n3-perimeter-localmin")
    rep = local_min_case(id, BodyKind::Cube, 3, 0.6, Functional::Perimeter);
  else if (id == "cube-n4-volume-localmin")
    rep = local_min_case(id, BodyKind::Cube, 4, 0.56, Functional::Volume);
  else
    throw Error(ErrorCode::UnknownId, "unknown counterexample '" + id + "'");
  finalize(rep);
  return rep;
}

}  // namespace polyslice
