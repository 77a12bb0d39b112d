#include "polyslice/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "polyslice/error.hpp"

namespace polyslice {

namespace {

using cd = std::complex<double>;

std::vector<double> nonzero(const std::vector<double>& c) {
  double mx = 0;
  for (double x : c) mx = std::max(mx, std::abs(x));
  std::vector<double> out;
  for (double x : c)
    if (std::abs(x) > 1e-15 * mx && x != 0.0) out.push_back(x);
  return out;
}

// Normalized B-spline with knots t[0..m-1] (order m-1) evaluated at 0.
double bspline_at_zero(std::vector<double> t) {
  std::sort(t.begin(), t.end());
  const int m = static_cast<int>(t.size());
  const int k = m - 1;
  std::vector<double> N(m - 1, 0.0);
  for (int i = 0; i + 1 < m; ++i) N[i] = (t[i] <= 0.0 && 0.0 < t[i + 1]) ? 1.0 : 0.0;
  for (int ord = 2; ord <= k; ++ord) {
    for (int i = 0; i + ord < m; ++i) {
      double v = 0;
      double d1 = t[i + ord - 1] - t[i];
      double d2 = t[i + ord] - t[i + 1];
      if (d1 > 0) v += (0.0 - t[i]) / d1 * N[i];
      if (d2 > 0) v += (t[i + ord] - 0.0) / d2 * N[i + 1];
      N[i] = v;
    }
  }
  return N[0];
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1 - x2 / 6 * (1 - x2 / 20);
  }
  return std::sin(x) / x;
}

}  // namespace

double rational_product_integral(const std::vector<double>& coeffs) {
  std::vector<double> c = nonzero(coeffs);
  if (c.size() < 2) throw Error(ErrorCode::NotIntegrable, "need at least two nonzero coefficients");
  double lo = *std::min_element(c.begin(), c.end());
  double hi = *std::max_element(c.begin(), c.end());
  if (lo > 0 || hi < 0) return 0.0;
  return bspline_at_zero(c) / (hi - lo);
}

double rational_product_density(const std::vector<double>& coeffs) {
  std::vector<double> c = nonzero(coeffs);
  if (c.empty()) return 0.0;
  if (c.size() == 1) return 0.5 / std::abs(c[0]);
  return rational_product_integral(c);
}

cd expint_e(int m, cd z) {
  constexpr double eps = 1e-16;
  if (std::abs(z) > 1.0) {
    // modified Lentz on the even continued fraction
    cd b = z + static_cast<double>(m);
    cd c = 1.0 / 1e-300;
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i < 200000; ++i) {
      double an = -static_cast<double>(i) * (m - 1 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      cd del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
    }
    throw Error(ErrorCode::QuadratureFailure, "E_m continued fraction did not converge");
  }
  double psi = -0.57721566490153286061;
  for (int k = 1; k < m; ++k) psi += 1.0 / k;
  cd fact = 1.0;  // (-z)^k / k!
  cd sum = 0.0;
  cd special = 0.0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) fact *= -z / static_cast<double>(k);
    if (k == m - 1) {
      special = fact * (-std::log(z) + psi);
      continue;
    }
    cd term = fact / static_cast<double>(k - m + 1);
    sum -= term;
    if (k > m && std::abs(term) < eps * std::abs(sum)) break;
  }
  return special + sum;
}

double oscillatory_integral(const std::vector<double>& sinc_weights, const std::vector<double>& cos_freqs) {
  std::vector<double> w, b;
  for (double x : sinc_weights)
    if (x != 0.0) w.push_back(std::abs(x));
  for (double x : cos_freqs)
    if (x != 0.0) b.push_back(std::abs(x));
  const int m = static_cast<int>(w.size());
  const int L = static_cast<int>(b.size());
  if (m == 0) throw Error(ErrorCode::QuadratureFailure, "no decaying factor");

  if (m == 1) {
    // sin(w s) prod cos(b_l s) = 2^{-L} sum_sigma sin((w + sigma.b) s)
    double acc = 0;
    for (int s = 0; s < (1 << L); ++s) {
      double om = w[0];
      for (int l = 0; l < L; ++l) om += ((s >> l) & 1) ? -b[l] : b[l];
      if (std::abs(om) > 1e-15 * (w[0] + 1)) acc += om > 0 ? 1.0 : -1.0;
    }
    return std::ldexp(acc, -L) / w[0];
  }

  double log_inv_prod = 0;
  for (double x : w) log_inv_prod -= std::log(x);
  double S = std::max(40.0, 4.0 * std::exp(log_inv_prod / (m - 1)));
  if (S > 1e5) throw Error(ErrorCode::QuadratureFailure, "weights too small for the tail expansion");

  double omega = 0;
  for (double x : w) omega += x;
  for (double x : b) omega += x;
  const double hmax = std::numbers::pi / (4 * omega);
  const int panels = static_cast<int>(std::ceil(S / hmax));
  const double h = S / panels;

  auto f = [&](double s) {
    double v = 1;
    for (double x : w) v *= sinc(x * s);
    for (double x : b) v *= std::cos(x * s);
    return v;
  };
  double head = 0;
  for (int p = 0; p < panels; ++p)
    head += boost::math::quadrature::gauss<double, 30>::integrate(f, p * h, (p + 1) * h);

  // Tail: numerator prod sin(w s) prod cos(b s) = sum_k c_k e^{i om_k s};
  // int_S^inf e^{i om s} s^{-m} ds = S^{1-m} E_m(-i om S).
  std::vector<std::pair<double, cd>> terms{{0.0, cd(1.0, 0.0)}};
  auto expand = [&](double freq, cd cp, cd cm) {
    std::vector<std::pair<double, cd>> nt;
    nt.reserve(terms.size() * 2);
    for (auto& [om, c] : terms) {
      nt.emplace_back(om + freq, c * cp);
      nt.emplace_back(om - freq, c * cm);
    }
    std::sort(nt.begin(), nt.end(), [](auto& x, auto& y) { return x.first < y.first; });
    terms.clear();
    for (auto& e : nt) {
      if (!terms.empty() && std::abs(terms.back().first - e.first) <= 1e-14 * omega) terms.back().second += e.second;
      else terms.push_back(e);
    }
  };
  for (double x : w) expand(x, cd(0, -0.5), cd(0, 0.5));  // sin = (e^{ix} - e^{-ix}) / 2i
  for (double x : b) expand(x, cd(0.5, 0), cd(0.5, 0));
  cd tail = 0;
  const double Sm = std::pow(S, 1 - m);
  for (auto& [om, c] : terms) {
    if (std::abs(c) == 0.0) continue;
    if (std::abs(om) * S < 1e-12) tail += c * Sm / static_cast<double>(m - 1);
    else tail += c * Sm * expint_e(m, cd(0, -om * S));
  }
  double tail_real = tail.real() * std::exp(log_inv_prod);
  return 2 / std::numbers::pi * (head + tail_real);
}

double sinc_product_integral(const std::vector<double>& weights, double t) {
  return oscillatory_integral(weights, {2 * t});
}

}  // namespace polyslice
