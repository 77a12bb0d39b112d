// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "polyslice/closed_form.hpp"
#include "polyslice/extrema.hpp"
#include "polyslice/integrals.hpp"
#include "polyslice/oracle.hpp"
#include "polyslice/suites.hpp"
#include "support.hpp"

using namespace polyslice;
using support::rel_err;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string label(const Body& b) { return std::string(to_string(b.kind())) + " n=" + std::to_string(b.n()); }

Outcome formula_oracle() {
  Rng rng(101);
  double worst = 0;
  for (BodyKind k : support::kAllBodies)
    for (int n = 3; n <= 7; ++n) {
      Body body(k, n);
      for (int s = 0; s < 200; ++s) {
        SectionQuery q = support::separating_query(body, rng);
        worst = std::max(worst, rel_err(closed_A(q).value, section_volume_exact(q)));
        worst = std::max(worst, rel_err(closed_P(q).value, perimeter_exact(q)));
      }
    }
  return {worst <= 1e-9, "max rel err " + fmt("%.2e", worst)};
}

Outcome printed_values() {
  Body s3(BodyKind::Simplex, 3);
  Direction bar = canonical_direction(s3, Canonical::Alternating);
  Direction apex = canonical_direction(s3, Canonical::Apex);
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  const double errs[] = {
      std::abs(section_volume_exact(make_query(s3, bar, 0)) - 0.5),
      std::abs(section_volume_exact(make_query(s3, apex, 0)) - 9 * r3 / 32),
      std::abs(perimeter_exact(make_query(s3, bar, 0)) - 2 * r2),
      std::abs(perimeter_exact(make_query(s3, apex, 0)) - 9 * r2 / 4),
  };
  double worst = 0;
  for (double e : errs) worst = std::max(worst, e);
  return {worst <= 1e-12, "max abs err " + fmt("%.2e", worst)};
}

Outcome normalization() {
  Rng rng(303);
  double worst = 0;
  for (BodyKind k : support::kAllBodies)
    for (int n = 2; n <= 6; ++n) {
      Body body(k, n);
      for (int s = 0; s < 20; ++s)
        worst = std::max(worst, rel_err(support::integrate_sections(body, sample_direction(body, rng)), body.volume()));
    }
  return {worst <= 1e-6, "max rel err " + fmt("%.2e", worst)};
}

Outcome suites(const std::vector<std::tuple<std::string, int, int>>& runs, int samples) {
  SuiteConfig cfg;
  cfg.samples = samples;
  cfg.t_values = 5;
  Outcome o;
  for (const auto& [id, lo, hi] : runs) {
    Report r = run_suite(id, lo, hi, cfg);
    int eq = 0;
    for (const auto& c : r.cases) eq += c.relation == Relation::EQ;
    o.pass = o.pass && all_pass(r);
    o.detail += id + " " + std::to_string(r.summary.passed) + "/" + std::to_string(r.summary.passed + r.summary.failed) +
                " (" + std::to_string(eq) + " eq) ";
  }
  return o;
}

Outcome sweeps_volume() {
  Outcome o = suites({{"thm1", 3, 8}, {"eq32", 3, 8}, {"thm4", 3, 8}}, 10000);
  Report cx = counterexample("simplex-n2-volume");
  o.pass = o.pass && all_pass(cx);
  o.detail += "simplex-n2-volume " + std::string(all_pass(cx) ? "violated" : "not violated");
  return o;
}

Outcome sweeps_perimeter() { return suites({{"thm2", 5, 8}, {"thm3", 4, 8}, {"thm5", 4, 8}}, 10000); }

Outcome threshold_scans() {
  struct Scan {
    BodyKind k;
    Functional f;
    int lo, hi;
  };
  const Scan scans[] = {{BodyKind::Simplex, Functional::Volume, 3, 7},
                        {BodyKind::Simplex, Functional::Perimeter, 4, 7},
                        {BodyKind::CrossPolytope, Functional::Volume, 3, 7},
                        {BodyKind::Cube, Functional::Volume, 3, 7},
                        {BodyKind::Cube, Functional::Perimeter, 6, 7},
                        {BodyKind::Cube, Functional::Perimeter, 3, 3}};
  Outcome o;
  double worst = 0;
  int count = 0;
  for (const Scan& s : scans)
    for (int n = s.lo; n <= s.hi; ++n) {
      ThresholdReport r = threshold_scan(s.k, s.f, n);
      worst = std::max(worst, r.gap);
      o.pass = o.pass && r.gap <= 1e-6;
      ++count;
    }
  o.detail = std::to_string(count) + " scans, max gap " + fmt("%.2e", worst);
  // where the analytic constant is a kernel flip, report the flip of the section itself
  const Scan info[] = {{BodyKind::Simplex, Functional::Perimeter, 4, 7}, {BodyKind::Cube, Functional::Volume, 6, 7}};
  for (const Scan& s : info)
    for (int n = s.lo; n <= s.hi; ++n) {
      ThresholdReport r = threshold_scan(s.k, s.f, n, Objective::Section);
      ThresholdReport kr = threshold_scan(s.k, s.f, n, Objective::Kernel);
      std::printf("  info: %s %s section flip %.6f, kernel flip %.6f\n", label(Body(s.k, n)).c_str(), to_string(s.f),
                  r.empirical, kr.empirical);
    }
  return o;
}

Outcome perimeter_bounds() { return suites({{"prop32", 3, 7}, {"central-perimeter", 3, 7}}, 1000); }

Outcome cube_half() {
  SuiteConfig cfg;
  cfg.samples = 1000;
  Report r = run_suite("prop44", 3, 7, cfg);
  for (const auto& c : r.cases)
    if (c.note == "empirical minimizer")
      std::printf("  info: cube n=%d min P(a,1/2) = %.6f (lower bound %.6f)\n", c.n, c.value, c.bound);
  return {all_pass(r), std::to_string(r.summary.passed) + "/" + std::to_string(r.summary.passed + r.summary.failed)};
}

Outcome monte_carlo() {
  Rng rng(909);
  std::uniform_int_distribution<int> body_pick(0, 2), dim(3, 6);
  std::uniform_real_distribution<double> frac(0.2, 0.8);
  int inside = 0, failed_hits = 0;
  for (int i = 0; i < 100; ++i) {
    Body body(support::kAllBodies[body_pick(rng)], dim(rng));
    Direction a = sample_direction(body, rng);
    std::vector<double> v = support::vertex_values(body, a.coords());
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    SectionQuery q = make_query(body, a, *lo + (*hi - *lo) * frac(rng));
    try {
      Estimate e = section_volume_mc(q, 1000000, 0, rng);
      inside += std::abs(e.value - section_volume_exact(q)) <= 3 * e.std_error;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientHits) throw;
      ++failed_hits;
    }
  }
  return {inside >= 99, std::to_string(inside) + "/100 within 3 sigma, " + std::to_string(failed_hits) + " short of hits"};
}

Outcome integral_forms() {
  Rng rng(1111);
  std::uniform_int_distribution<int> dim(3, 7);
  // errors on the scale of the largest section (about 1): the sinc integral
  // cannot resolve values far below its own absolute accuracy
  auto err = [](double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); };
  double wa = 0, wp = 0, wr = 0;
  for (int s = 0; s < 50; ++s) {
    SectionQuery q = support::separating_query(Body(BodyKind::Cube, dim(rng)), rng);
    wa = std::max(wa, err(analytic_A_integral(q).value, closed_A(q).value));
    SectionQuery p = support::separating_query(Body(BodyKind::Simplex, dim(rng)), rng);
    wp = std::max(wp, err(analytic_P_integral(p).value, closed_P(p).value));
  }
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_int_distribution<int> len(2, 6);
  for (int done = 0; done < 50;) {
    std::vector<double> c(len(rng));
    for (double& x : c) x = u(rng);
    bool spread = true;
    for (size_t i = 0; i < c.size(); ++i) {
      if (std::abs(c[i]) < 0.05) spread = false;
      for (size_t j = 0; j < i; ++j)
        if (std::abs(c[i] - c[j]) < 0.05) spread = false;
    }
    if (!spread) continue;
    ++done;
    const double v = rational_product_integral(c);
    wr = std::max(wr, err(support::direct_density(c), v));
  }
  return {wa <= 1e-8 && wp <= 1e-8 && wr <= 1e-7,
          "A " + fmt("%.1e", wa) + ", P " + fmt("%.1e", wp) + ", rational " + fmt("%.1e", wr)};
}

Outcome uniqueness() {
  Outcome o;
  Rng rng(42);
  int points = 0, misses = 0;
  for (BodyKind k : support::kAllBodies)
    for (Functional f : {Functional::Volume, Functional::Perimeter})
      for (int n = 2; n <= 6; ++n) {
        Body body(k, n);
        ValidityRange r = extremal_range(body, f);
        if (r.lo > r.hi) continue;
        const Eigen::VectorXd want = canonicalize(extremal_direction(body)).coords();
        for (double w : {0.2, 0.5, 0.8}) {
          const double t = r.lo + w * (r.hi - r.lo);
          MaximizeResult m = sphere_maximize(body, t, f, 64, rng);
          ++points;
          if ((canonicalize(m.best).coords() - want).norm() > 1e-6) {
            ++misses;
            std::printf("  miss: %s %s t=%.6f\n", label(body).c_str(), to_string(f), t);
          }
        }
      }
  int minima = 0, wrong = 0;
  for (int n = 3; n <= 6; ++n) {
    Body s(BodyKind::Simplex, n), x(BodyKind::CrossPolytope, n);
    const ConstantsTable c = thresholds(s);
    const double cx = 3.0 / (n + 2);
    for (double w : {0.1, 0.5, 0.9}) {
      const double ts = c.lower + w * (c.c_volume - c.lower), tx = w * cx;
      for (auto [body, t] : {std::pair{s, ts}, std::pair{x, tx}}) {
        ++minima;
        if (classify(body, extremal_direction(body), t, Functional::Volume).classification != Classification::LocalMin) {
          ++wrong;
          std::printf("  not a local min: %s t=%.6f\n", label(body).c_str(), t);
        }
      }
    }
  }
  o.pass = misses == 0 && wrong == 0;
  o.detail = std::to_string(points - misses) + "/" + std::to_string(points) + " maxima, " +
             std::to_string(minima - wrong) + "/" + std::to_string(minima) + " local minima";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed forms agree with the exact oracle", formula_oracle},
      {"printed simplex example values", printed_values},
      {"section integrals recover the volume", normalization},
      {"volume sweeps and the planar counterexample", sweeps_volume},
      {"perimeter sweeps", sweeps_perimeter},
      {"threshold scans", threshold_scans},
      {"central perimeter bounds", perimeter_bounds},
      {"cube perimeter at t = 1/2", cube_half},
      {"Monte Carlo coverage", monte_carlo},
      {"integral representations", integral_forms},
      {"uniqueness and local minima", uniqueness},
  };
  int failures = 0, idx = 0;
  for (const auto& [name, run] : criteria) {
    ++idx;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
