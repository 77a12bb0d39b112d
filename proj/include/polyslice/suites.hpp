#pragma once

#include <string>
#include <vector>

#include "polyslice/bodies.hpp"
#include "polyslice/report.hpp"

namespace polyslice {

struct SuiteConfig {
  int samples = 1000;  // directions per (n, t)
  int t_values = 5;
  std::uint64_t seed = 42;
  double spot_check_fraction = 0.01;
};

const std::vector<std::string>& suite_ids();
Report run_suite(const std::string& id, int n_min, int n_max, const SuiteConfig& cfg = {});

// Random directions at a single (body, t): each value against the extremal
// value (relation le); closed forms in regime, exact oracle elsewhere.
Report sweep_directions(const Body& body, double t, Functional f, int samples, std::uint64_t seed);

const std::vector<std::string>& counterexample_ids();
Report counterexample(const std::string& id);

}  // namespace polyslice
