#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "polyslice/bodies.hpp"
#include "polyslice/oracle.hpp"

namespace support {

using namespace polyslice;

inline double rel_err(double a, double b) {
  double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

inline std::vector<double> vertex_values(const Body& body, const Eigen::VectorXd& a) {
  std::vector<double> v;
  for (int id = 0; id < body.num_vertices(); ++id) v.push_back(dot_vertex(body, a, id));
  return v;
}

// Random query strictly between the largest and second largest vertex value,
// away from both by 5% of the gap.
inline SectionQuery separating_query(const Body& body, Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (;;) {
    Direction a = sample_direction(body, rng);
    std::vector<double> v = vertex_values(body, a.coords());
    std::sort(v.begin(), v.end(), std::greater<double>());
    if (v[0] - v[1] < 1e-3) continue;
    double t = v[1] + (v[0] - v[1]) * u(rng);
    return make_query(body, a, t);
  }
}

// Random query with t uniform between the extreme vertex values.
inline SectionQuery any_query(const Body& body, Rng& rng) {
  Direction a = sample_direction(body, rng);
  std::vector<double> v = vertex_values(body, a.coords());
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  std::uniform_real_distribution<double> u(0.02, 0.98);
  return make_query(body, a, *lo + (*hi - *lo) * u(rng));
}

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// (1/pi) int_0^inf Re prod 1/(1 + i c s) ds by Gauss-Kronrod on panels of
// growing width, plus the first two terms of the large-s expansion as tail.
inline double direct_density(const std::vector<double>& c) {
  auto f = [&](double s) {
    std::complex<double> p = 1;
    for (double x : c) p /= std::complex<double>(1, x * s);
    return p.real();
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double cmin = 1e300, prod = 1, recip = 0;
  for (double x : c) {
    cmin = std::min(cmin, std::abs(x));
    prod *= x;
    recip += 1 / x;
  }
  const int m = static_cast<int>(c.size());
  const double end = 4e4 / cmin;
  double sum = 0, lo = 0, w = 0.5;
  while (lo < end) {
    double hi = std::min(lo + w, end);
    sum += GK::integrate(f, lo, hi, 15, 1e-13);
    lo = hi;
    w = std::min(w * 1.5, 50.0);
  }
  const std::complex<double> im = std::pow(std::complex<double>(0, 1), -m);
  sum += im.real() / prod * std::pow(end, 1 - m) / (m - 1);
  sum += (im * std::complex<double>(0, 1)).real() * recip / prod * std::pow(end, -m) / m;
  return sum / M_PI;
}

// A(a, .) is a polynomial of degree n-1 between consecutive vertex values,
// so Gauss-Legendre on each piece integrates it exactly.
inline double integrate_sections(const Body& body, const Direction& a) {
  std::vector<double> br = support::vertex_values(body, a.coords());
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end(), [](double x, double y) { return y - x < 1e-12; }), br.end());
  double sum = 0;
  for (size_t i = 0; i + 1 < br.size(); ++i) {
    auto f = [&](double t) { return section_volume_exact(make_query(body, a, t)); };
    sum += boost::math::quadrature::gauss<double, 7>::integrate(f, br[i], br[i + 1]);
  }
  return sum;
}

inline const BodyKind kAllBodies[] = {BodyKind::Simplex, BodyKind::CrossPolytope, BodyKind::Cube};

}  // namespace support
