#include "polyslice/closed_form.hpp"

#include <cmath>

#include "polyslice/integrals.hpp"

namespace polyslice {

namespace {

constexpr double kGap = 1e-13;
constexpr double kTie = 1e-12;

double lfact(int k) { return std::lgamma(k + 1.0); }

// prod of positive factors; log-space above 30 factors
class PosProduct {
 public:
  explicit PosProduct(int count) : log_(count > 30) {}
  void mul(double x) {
    if (log_) acc_ += std::log(x);
    else acc_ *= x;
  }
  void div(double x) {
    if (log_) acc_ -= std::log(x);
    else acc_ /= x;
  }
  double log_value() const { return log_ ? acc_ : std::log(acc_); }
  double value() const { return log_ ? std::exp(acc_) : acc_; }

 private:
  bool log_;
  double acc_ = log_ ? 0.0 : 1.0;
};

double apex_value(const Body& body, const Eigen::VectorXd& a) {
  switch (body.kind()) {
    case BodyKind::Simplex: return a.maxCoeff();
    case BodyKind::CrossPolytope: return a.cwiseAbs().maxCoeff();
    case BodyKind::Cube: return 0.5 * a.cwiseAbs().sum();
  }
  return 0;
}

// Returns true when the query is in the separating regime; otherwise fills
// `out` for the zero cases or throws.
bool gate(const SectionQuery& q, const Regime& r, SectionValue& out) {
  out.method = Method::ClosedForm;
  out.regime = r.tag;
  out.value = 0;
  if (r.tag == RegimeTag::Empty) return false;
  if (r.tag == RegimeTag::General) {
    if (std::abs(apex_value(q.body, q.a.coords()) - q.t) <= kTie) return false;
    throw Error(ErrorCode::RegimeViolation, "hyperplane does not separate a single vertex");
  }
  const Eigen::VectorXd& b = r.normalized;
  const int dim = static_cast<int>(b.size());
  switch (q.body.kind()) {
    case BodyKind::Simplex:
    case BodyKind::CrossPolytope:
      for (int j = 1; j < dim; ++j)
        if (b[0] - b[j] <= kGap) throw Error(ErrorCode::RegimeViolation, "apex gap below 1e-13");
      break;
    case BodyKind::Cube:
      for (int j = 0; j < dim; ++j)
        if (b[j] <= kGap) throw Error(ErrorCode::RegimeViolation, "zero cube coordinate");
      break;
  }
  return true;
}

void require_perimeter_dim(const Body& body) {
  if (body.n() < 3) throw Error(ErrorCode::UnsupportedQuery, "perimeter needs n >= 3");
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::Integral: return "integral";
    case Method::Exact: return "exact";
    case Method::MonteCarlo: return "mc";
  }
  return "?";
}

SectionValue closed_A(const SectionQuery& q) {
  Regime r = regime_check(q);
  SectionValue out;
  if (!gate(q, r, out)) return out;
  const Eigen::VectorXd& b = r.normalized;
  const int n = q.body.n();
  const double t = q.t;
  PosProduct p(n + 2);
  switch (q.body.kind()) {
    case BodyKind::Simplex:
      for (int j = 1; j <= n; ++j) p.div(b[0] - b[j]);
      out.value = std::exp(0.5 * std::log(n + 1.0) - lfact(n - 1) + p.log_value() + (n - 1) * std::log(b[0] - t));
      break;
    case BodyKind::CrossPolytope:
      for (int j = 1; j < n; ++j) p.div((b[0] - b[j]) * (b[0] + b[j]));
      out.value = std::exp((n - 1) * std::log(2.0) - lfact(n - 1) + (n - 2) * std::log(b[0]) + p.log_value() +
                           (n - 1) * std::log(b[0] - t));
      break;
    case BodyKind::Cube: {
      double half = 0;
      for (int j = 0; j < n; ++j) {
        half += b[j];
        p.div(b[j]);
      }
      half *= 0.5;
      out.value = std::exp(-lfact(n - 1) + p.log_value() + (n - 1) * std::log(half - t));
      break;
    }
  }
  return out;
}

SectionValue closed_P(const SectionQuery& q) {
  require_perimeter_dim(q.body);
  Regime r = regime_check(q);
  SectionValue out;
  if (!gate(q, r, out)) return out;
  const Eigen::VectorXd& b = r.normalized;
  const int n = q.body.n();
  const double t = q.t;
  switch (q.body.kind()) {
    case BodyKind::Simplex: {
      // prod_{k != j} 1/g_k = g_j * prod_k 1/g_k
      PosProduct p(n);
      double s = 0;
      for (int j = 1; j <= n; ++j) {
        double g = b[0] - b[j];
        p.div(g);
        s += std::sqrt(std::max(0.0, n - (n + 1) * b[j] * b[j])) * g;
      }
      out.value = std::exp(-lfact(n - 2) + p.log_value() + (n - 2) * std::log(b[0] - t)) * s;
      break;
    }
    case BodyKind::CrossPolytope: {
      if (n > 20) throw Error(ErrorCode::ResourceLimit, "cross-polytope perimeter sum refused above n = 20");
      double s = 0;
      const double logpow = (n - 2) * std::log(b[0] - t);
      for (long e = 0; e < (1L << (n - 1)); ++e) {
        double dot = b[0];
        PosProduct p(n);
        for (int j = 1; j < n; ++j) {
          double ej = ((e >> (j - 1)) & 1) ? -1.0 : 1.0;
          dot += ej * b[j];
          p.div(b[0] - ej * b[j]);
        }
        double w = std::sqrt(std::max(0.0, 1 - dot * dot / n));
        s += w * std::exp(p.log_value() + logpow);
      }
      out.value = std::sqrt(static_cast<double>(n)) * std::exp(-lfact(n - 2)) * s;
      break;
    }
    case BodyKind::Cube: {
      PosProduct p(n);
      double half = 0, s = 0;
      for (int j = 0; j < n; ++j) {
        half += b[j];
        p.div(b[j]);
        s += b[j] * std::sqrt(std::max(0.0, 1 - b[j] * b[j]));
      }
      half *= 0.5;
      out.value = std::exp(-lfact(n - 2) + p.log_value() + (n - 2) * std::log(half - t)) * s;
      break;
    }
  }
  return out;
}

double closed_cap(const SectionQuery& q) {
  Regime r = regime_check(q);
  if (r.tag == RegimeTag::Empty) return q.t > 0 ? 0.0 : q.body.volume();
  SectionValue tmp;
  if (!gate(q, r, tmp)) return 0.0;
  SectionValue a = closed_A(q);
  const Eigen::VectorXd& b = r.normalized;
  const int n = q.body.n();
  // pyramid over the section with apex at the separated vertex
  double height = 0;
  switch (q.body.kind()) {
    case BodyKind::Simplex: {
      // distance from e_apex to H inside the affine hull; a is a unit vector there
      height = b[0] - q.t;
      break;
    }
    case BodyKind::CrossPolytope: height = b[0] - q.t; break;
    case BodyKind::Cube: height = 0.5 * b.sum() - q.t; break;
  }
  return a.value * height / n;
}

SectionValue analytic_A_integral(const SectionQuery& q) {
  if (q.body.kind() != BodyKind::Cube)
    throw Error(ErrorCode::UnsupportedQuery, "sinc representation is only available for the cube");
  const Eigen::VectorXd& a = q.a.coords();
  SectionValue out;
  out.method = Method::Integral;
  out.regime = regime_check(q).tag;
  out.value = sinc_product_integral(std::vector<double>(a.data(), a.data() + a.size()), q.t);
  return out;
}

SectionValue analytic_P_integral(const SectionQuery& q) {
  require_perimeter_dim(q.body);
  const Eigen::VectorXd& a = q.a.coords();
  const int n = q.body.n();
  const double t = q.t;
  SectionValue out;
  out.method = Method::Integral;
  out.regime = regime_check(q).tag;
  double total = 0;
  switch (q.body.kind()) {
    case BodyKind::Cube:
      for (int k = 0; k < n; ++k) {
        double wk = std::sqrt(std::max(0.0, 1 - a[k] * a[k]));
        if (wk == 0.0) continue;
        std::vector<double> rest;
        for (int j = 0; j < n; ++j)
          if (j != k) rest.push_back(a[j]);
        total += 2 * wk * oscillatory_integral(rest, {a[k], 2 * t});
      }
      break;
    case BodyKind::Simplex:
      for (int j = 0; j <= n; ++j) {
        double wj = std::sqrt(std::max(0.0, n - (n + 1) * a[j] * a[j]));
        if (wj == 0.0) continue;
        std::vector<double> c;
        for (int k = 0; k <= n; ++k)
          if (k != j) c.push_back(a[k] - t);
        total += wj * rational_product_density(c);
      }
      total *= std::exp(-lfact(n - 2));
      break;
    case BodyKind::CrossPolytope: {
      if (t != 0.0) throw Error(ErrorCode::UnsupportedQuery, "cross-polytope integral formula needs t = 0");
      if (n > 20) throw Error(ErrorCode::ResourceLimit, "cross-polytope face sum refused above n = 20");
      std::vector<double> c(n);
      for (long e = 0; e < (1L << n); ++e) {
        double dot = 0;
        for (int j = 0; j < n; ++j) {
          double ej = ((e >> j) & 1) ? -1.0 : 1.0;
          c[j] = ej * a[j];
          dot += c[j];
        }
        double w = std::sqrt(std::max(0.0, n - dot * dot));
        if (w == 0.0) continue;
        total += w * rational_product_density(c);
      }
      total *= std::exp(-lfact(n - 2));
      break;
    }
  }
  out.value = total;
  return out;
}

ValidityRange extremal_range(const Body& body, Functional f) {
  const int n = body.n();
  const double dn = n;
  const ConstantsTable c = thresholds(body);
  const ValidityRange none{1, true, 0};
  switch (body.kind()) {
    case BodyKind::Simplex: {
      const double top = std::sqrt(dn / (dn + 1));
      if (f == Functional::Volume) {
        if (n == 2) return {1.25 / std::sqrt(6.0), false, top};
        return {c.d, true, top};
      }
      if (n >= 5) return {c.d, true, top};
      if (n == 4) return {std::sqrt(1.5) * std::sqrt(0.3), true, top};
      return none;
    }
    case BodyKind::CrossPolytope:
      if (f == Functional::Volume) {
        if (n == 2) return {0.75, true, 1};
        return {c.d, true, 1};
      }
      if (n >= 4) return {c.d, true, 1};
      if (n == 3) return {0.8, true, 1};
      return none;
    case BodyKind::Cube: {
      const double top = std::sqrt(dn) / 2;
      if (f == Functional::Volume) {
        if (n == 2) return {3 * std::sqrt(2.0) / 8, true, top};
        return {c.d, true, top};
      }
      if (n >= 4) return {c.d, true, top};
      if (n == 3) return {c.t0, true, top};
      return none;
    }
  }
  return none;
}

bool in_range(const ValidityRange& r, double t) {
  if (r.lo > r.hi) return false;
  bool lo_ok = r.lo_open ? t > r.lo : t >= r.lo;
  return lo_ok && t <= r.hi;
}

Direction extremal_direction(const Body& body) {
  return canonical_direction(body, body.kind() == BodyKind::Cube ? Canonical::MainDiagonal : Canonical::Apex);
}

SectionValue extremal_value(const Body& body, double t, Functional f) {
  const int n = body.n();
  const double dn = n;
  if (f == Functional::Perimeter) require_perimeter_dim(body);
  SectionValue out;
  out.method = Method::ClosedForm;
  out.regime = regime_check(make_query(body, extremal_direction(body), t)).tag;
  out.warning = !in_range(extremal_range(body, f), t);
  const int k = f == Functional::Volume ? n - 1 : n - 2;
  auto powk = [&](double base) { return base <= 0 ? 0.0 : std::pow(base, k); };
  switch (body.kind()) {
    case BodyKind::Simplex: {
      const double s = std::sqrt(dn / (dn + 1));
      if (f == Functional::Volume)
        out.value = std::sqrt(dn + 1) * std::exp(-lfact(n - 1)) * std::pow(dn / (dn + 1), dn / 2) * powk(s - t);
      else
        out.value = dn * std::sqrt(dn - 1) * std::exp(-lfact(n - 2)) * std::pow(dn / (dn + 1), (dn - 2) / 2) *
                    powk(s - t);
      break;
    }
    case BodyKind::CrossPolytope:
      if (f == Functional::Volume)
        out.value = std::ldexp(1.0, n - 1) * std::exp(-lfact(n - 1)) * powk(1 - t);
      else
        out.value = std::sqrt(dn - 1) * std::exp(-lfact(n - 2)) * std::ldexp(1.0, n - 1) * powk(1 - t);
      break;
    case BodyKind::Cube: {
      const double h = std::sqrt(dn) / 2 - t;
      if (f == Functional::Volume)
        out.value = std::pow(dn, dn / 2) * std::exp(-lfact(n - 1)) * powk(h);
      else
        out.value = std::sqrt(dn - 1) * std::exp(-lfact(n - 2)) * std::pow(dn, dn / 2) * powk(h);
      break;
    }
  }
  return out;
}

}  // namespace polyslice
