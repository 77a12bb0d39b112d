#pragma once

#include <complex>
#include <vector>

namespace polyslice {

// (1/2pi) * integral over R of prod_k 1/(1 + i c_k s) ds, i.e. the divided
// difference of x_+^{m-2} over the nonzero coefficients. Zero coefficients
// are dropped; fewer than two remaining throws NotIntegrable.
double rational_product_integral(const std::vector<double>& coeffs);

// Same density, but one remaining coefficient c gives the principal value
// 1/(2|c|) and none gives 0. Used by face sums where such faces lie on a
// boundary shared with a neighbouring face.
double rational_product_density(const std::vector<double>& coeffs);

// (2/pi) * int_0^inf prod_j sinc(w_j s) * prod_l cos(b_l s) ds.
// Zero weights and zero frequencies are dropped.
double oscillatory_integral(const std::vector<double>& sinc_weights, const std::vector<double>& cos_freqs);

// (2/pi) * int_0^inf prod_j sinc(a_j s) cos(2 t s) ds.
double sinc_product_integral(const std::vector<double>& weights, double t);

// Generalized exponential integral E_m(z), m >= 1, z off the negative real axis.
std::complex<double> expint_e(int m, std::complex<double> z);

}  // namespace polyslice
