#pragma once

#include <vector>

#include "polyslice/bodies.hpp"
#include "polyslice/integrals.hpp"

namespace polyslice {

struct SectionPolytope {
  std::vector<Eigen::VectorXd> points;
  // vertex ids spanning the body face that carries each point (1 or 2 ids)
  std::vector<std::vector<int>> support;
  // orthonormal basis (columns) of the hyperplane's direction space
  Eigen::MatrixXd frame;
};

SectionPolytope section_vertices(const SectionQuery& q);

// (n-1)-volume of H cap K by recursive pyramid decomposition.
double section_volume_exact(const SectionQuery& q);

// (n-2)-volume of H cap boundary(K); n >= 3.
double perimeter_exact(const SectionQuery& q);

// vol_n of {x in K : <a,x> >= t}.
double cap_volume(const SectionQuery& q);

struct Estimate {
  double value = 0;
  double std_error = 0;
  long samples = 0;
  long hits = 0;
};

// slab_eps <= 0 selects the default 1e-3 * diameter.
Estimate section_volume_mc(const SectionQuery& q, long samples, double slab_eps, Rng& rng);

}  // namespace polyslice
