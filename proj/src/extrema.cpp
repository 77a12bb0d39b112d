#include "polyslice/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyslice/closed_form.hpp"
#include "polyslice/oracle.hpp"

namespace polyslice {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_simplex(const Body& b) { return b.kind() == BodyKind::Simplex; }

Eigen::MatrixXd tangent_basis(const Body& body, const Eigen::VectorXd& a) {
  const int d = static_cast<int>(a.size());
  const int c = is_simplex(body) ? 2 : 1;
  Eigen::MatrixXd N(d, c);
  N.col(0) = a;
  if (c == 2) N.col(1) = Eigen::VectorXd::Ones(d) / std::sqrt(static_cast<double>(d));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(N);
  Eigen::MatrixXd Q = qr.householderQ();
  return Q.rightCols(d - c);
}

Eigen::VectorXd retract(const Body& body, Eigen::VectorXd x) {
  if (is_simplex(body)) x.array() -= x.mean();
  return x / x.norm();
}

int kernel_power(const Body& body, Functional f) { return f == Functional::Volume ? body.n() - 1 : body.n() - 2; }

double log_kernel(const Body& body, const Eigen::VectorXd& a, double t, Functional f) {
  const int n = body.n();
  const int k = kernel_power(body, f);
  switch (body.kind()) {
    case BodyKind::Simplex: {
      Eigen::Index i0;
      double a1 = a.maxCoeff(&i0);
      if (a1 <= t) return kNegInf;
      double s = k * std::log(a1 - t);
      for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (j == i0) continue;
        if (a1 - a[j] <= 0) return kNegInf;
        s -= std::log(a1 - a[j]);
      }
      return s;
    }
    case BodyKind::CrossPolytope: {
      if (f != Functional::Volume) throw Error(ErrorCode::Unsupported, "no product kernel for the cross-polytope perimeter");
      Eigen::Index i0;
      double b = a.cwiseAbs().maxCoeff(&i0);
      if (b <= t) return kNegInf;
      double s = (n - 2) * std::log(b) + (n - 1) * std::log(b - t);
      for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (j == i0) continue;
        double g = b * b - a[j] * a[j];
        if (g <= 0) return kNegInf;
        s -= std::log(g);
      }
      return s;
    }
    case BodyKind::Cube: {
      double S = a.cwiseAbs().sum();
      if (S - 2 * t <= 0) return kNegInf;
      double s = k * std::log(S - 2 * t);
      for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (a[j] == 0) return kNegInf;
        s -= std::log(std::abs(a[j]));
      }
      return s;
    }
  }
  return kNegInf;
}

double section_value(const Body& body, const Eigen::VectorXd& a, double t, Functional f) {
  SectionQuery q{body, Direction::unchecked(body.kind(), a), t};
  Regime r = regime_check(q);
  if (r.tag == RegimeTag::Empty) return 0;
  try {
    return f == Functional::Volume ? closed_A(q).value : closed_P(q).value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RegimeViolation) throw;
  }
  return f == Functional::Volume ? section_volume_exact(q) : perimeter_exact(q);
}

std::vector<int> group_sizes(const Eigen::VectorXd& sorted_tail) {
  std::vector<int> g;
  for (Eigen::Index i = 0; i < sorted_tail.size(); ++i) {
    if (i > 0 && std::abs(sorted_tail[i] - sorted_tail[i - 1]) <= 1e-9) ++g.back();
    else g.push_back(1);
  }
  return g;
}

Classification classify_eigs(const Eigen::VectorXd& ev, double* so) {
  double norm = ev.cwiseAbs().maxCoeff();
  double tol = std::max(1e-6 * norm, 1e-7);
  int pos = 0, neg = 0, zero = 0;
  double closest = ev[0];
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > tol) ++pos;
    else if (ev[i] < -tol) ++neg;
    else ++zero;
    if (std::abs(ev[i]) < std::abs(closest)) closest = ev[i];
  }
  *so = -closest;
  if (zero > 0) return Classification::Degenerate;
  if (neg == ev.size()) return Classification::LocalMax;
  if (pos == ev.size()) return Classification::LocalMin;
  return Classification::Saddle;
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::LocalMax: return "LocalMax";
    case Classification::LocalMin: return "LocalMin";
    case Classification::Saddle: return "Saddle";
    case Classification::Degenerate: return "Degenerate";
  }
  return "?";
}

const char* to_string(Objective o) { return o == Objective::Section ? "section" : "kernel"; }

double objective_value(const Body& body, const Eigen::VectorXd& a, double t, Functional f, Objective o) {
  if (o == Objective::Kernel) return std::exp(log_kernel(body, a, t, f));
  return section_value(body, a, t, f);
}

double log_objective(const Body& body, const Eigen::VectorXd& a, double t, Functional f, Objective o) {
  if (o == Objective::Kernel) return log_kernel(body, a, t, f);
  double v = section_value(body, a, t, f);
  return v > 0 ? std::log(v) : kNegInf;
}

Eigen::VectorXd log_kernel_gradient(const Body& body, const Eigen::VectorXd& a, double t, Functional f) {
  const int n = body.n();
  const int k = kernel_power(body, f);
  Eigen::VectorXd g = Eigen::VectorXd::Constant(a.size(), kNaN);
  switch (body.kind()) {
    case BodyKind::Simplex: {
      Eigen::Index i0;
      double a1 = a.maxCoeff(&i0);
      if (a1 <= t) return g;
      double s = k / (a1 - t);
      for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (j == i0) continue;
        g[j] = 1 / (a1 - a[j]);
        s -= g[j];
      }
      g[i0] = s;
      return g;
    }
    case BodyKind::CrossPolytope: {
      if (f != Functional::Volume) throw Error(ErrorCode::Unsupported, "no product kernel for the cross-polytope perimeter");
      Eigen::Index i0;
      double b = a.cwiseAbs().maxCoeff(&i0);
      if (b <= t) return g;
      double s = (n - 2) / b + (n - 1) / (b - t);
      for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (j == i0) continue;
        double den = b * b - a[j] * a[j];
        g[j] = 2 * a[j] / den;
        s -= 2 * b / den;
      }
      g[i0] = a[i0] < 0 ? -s : s;
      return g;
    }
    case BodyKind::Cube: {
      double S = a.cwiseAbs().sum();
      if (S - 2 * t <= 0) return g;
      for (Eigen::Index j = 0; j < a.size(); ++j) {
        double sg = a[j] < 0 ? -1.0 : 1.0;
        g[j] = sg * k / (S - 2 * t) - 1 / a[j];
      }
      return g;
    }
  }
  return g;
}

LagrangeFit lagrange_fit(const Body& body, const Eigen::VectorXd& a, const Eigen::VectorXd& grad) {
  const int d = static_cast<int>(a.size());
  const int c = is_simplex(body) ? 2 : 1;
  Eigen::MatrixXd C(d, c);
  C.col(0) = a;
  if (c == 2) C.col(1) = Eigen::VectorXd::Ones(d);
  Eigen::VectorXd m = C.colPivHouseholderQr().solve(-grad);
  LagrangeFit fit;
  fit.residual = (grad + C * m).norm();
  fit.lambda = m[0];
  if (c == 2) fit.mu = m[1];
  return fit;
}

double second_order_coefficient(const Body& body, double t, Functional f) {
  const double n = body.n();
  auto guard = [](double den) {
    if (!(den > 1e-14)) throw Error(ErrorCode::DomainError, "second-order coefficient has a pole here");
  };
  switch (body.kind()) {
    case BodyKind::Simplex: {
      const double s = std::sqrt(n / (n + 1));
      const double k = f == Functional::Volume ? n - 1 : n - 2;
      guard(s - t);
      return k / (s - t) - (n + 2) * s;
    }
    case BodyKind::CrossPolytope:
      if (f != Functional::Volume) throw Error(ErrorCode::Unsupported, "no second-order coefficient for this pair");
      guard(1 - t);
      return (n - 1) / (1 - t) - (n + 2);
    case BodyKind::Cube: {
      const double k = f == Functional::Volume ? n - 1 : n - 2;
      guard(std::sqrt(n) - 2 * t);
      return k / (std::sqrt(n) - 2 * t) - 2 * std::sqrt(n);
    }
  }
  return kNaN;
}

namespace {

struct Chart {
  const Body& body;
  Eigen::VectorXd a;
  Eigen::MatrixXd B;
  double t;
  Functional f;
  Objective o;
  double L(const Eigen::VectorXd& u) const { return log_objective(body, retract(body, a + B * u), t, f, o); }
};

Eigen::VectorXd fd_gradient(const Chart& ch, double h) {
  const int m = static_cast<int>(ch.B.cols());
  Eigen::VectorXd g(m);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    u[i] = h;
    double p = ch.L(u);
    u[i] = -h;
    double q = ch.L(u);
    u[i] = 0;
    g[i] = (p - q) / (2 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const Chart& ch, double h, bool diagonal_only) {
  const int m = static_cast<int>(ch.B.cols());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  const double L0 = ch.L(u);
  for (int i = 0; i < m; ++i) {
    u[i] = h;
    double p = ch.L(u);
    u[i] = -h;
    double q = ch.L(u);
    u[i] = 0;
    H(i, i) = (p - 2 * L0 + q) / (h * h);
  }
  if (diagonal_only) return H;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double s[4];
      int idx = 0;
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          u[i] = si * h;
          u[j] = sj * h;
          s[idx++] = ch.L(u);
        }
      u[i] = u[j] = 0;
      H(i, j) = H(j, i) = (s[0] - s[1] - s[2] + s[3]) / (4 * h * h);
    }
  return H;
}

}  // namespace

CriticalPoint classify(const Body& body, const Direction& a, double t, Functional f, const ExtremaOptions& opt) {
  Chart ch{body, a.coords(), tangent_basis(body, a.coords()), t, f, opt.objective};
  const double L0 = ch.L(Eigen::VectorXd::Zero(ch.B.cols()));
  if (!std::isfinite(L0)) throw Error(ErrorCode::NotCritical, "objective vanishes at this direction");
  Eigen::VectorXd g = fd_gradient(ch, opt.gradient_step);
  if (!g.allFinite() || g.norm() > opt.critical_tol)
    throw Error(ErrorCode::NotCritical, "tangent gradient norm " + std::to_string(g.norm()));
  Eigen::MatrixXd H = fd_hessian(ch, opt.hessian_step, false);
  if (!H.allFinite()) throw Error(ErrorCode::NotCritical, "objective not finite near this direction");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  CriticalPoint cp(a);
  cp.hessian_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  cp.classification = classify_eigs(es.eigenvalues(), &cp.second_order);
  cp.residual = g.norm();

  bool has_kernel = !(body.kind() == BodyKind::CrossPolytope && f == Functional::Perimeter);
  if (has_kernel) {
    Eigen::VectorXd kg = log_kernel_gradient(body, a.coords(), t, f);
    if (kg.allFinite()) {
      LagrangeFit fit = lagrange_fit(body, a.coords(), kg);
      cp.lambda = fit.lambda;
      cp.mu = fit.mu;
    }
  }
  Direction c = canonicalize(a);
  cp.apex = c[0];
  cp.multiplicity = group_sizes(c.coords().tail(c.size() - 1));
  return cp;
}

double mean_curvature(const Body& body, const Direction& a, double t, Functional f, const ExtremaOptions& opt) {
  Chart ch{body, a.coords(), tangent_basis(body, a.coords()), t, f, opt.objective};
  Eigen::MatrixXd H = fd_hessian(ch, opt.hessian_step, true);
  return H.trace() / static_cast<double>(H.rows());
}

Direction canonicalize(const Direction& a) {
  Eigen::VectorXd x = a.coords();
  if (a.body() == BodyKind::Simplex) {
    std::sort(x.data(), x.data() + x.size(), std::greater<double>());
  } else {
    x = x.cwiseAbs();
    std::sort(x.data(), x.data() + x.size(), std::greater<double>());
  }
  return Direction::unchecked(a.body(), std::move(x));
}

std::pair<Direction, double> ascend_from(const Body& body, const Direction& start, double t, Functional f,
                                         const ExtremaOptions& opt) {
  const Objective o = opt.objective;
  Eigen::VectorXd x = start.coords();
  double L = log_objective(body, x, t, f, o);
  if (!std::isfinite(L)) return {start, 0.0};
  double alpha = 0.1;
  for (int it = 0; it < 10000; ++it) {
    Chart ch{body, x, tangent_basis(body, x), t, f, o};
    Eigen::VectorXd gu = fd_gradient(ch, opt.gradient_step);
    if (!gu.allFinite()) {
      // a probe left the support; fall back to one-sided shrinking steps
      gu = fd_gradient(ch, opt.gradient_step * 1e-2);
      if (!gu.allFinite()) break;
    }
    double gn = gu.norm();
    if (gn < 1e-10) break;
    Eigen::VectorXd g = ch.B * gu;
    alpha = std::min(alpha * 4, 10.0);
    bool moved = false;
    while (alpha > 1e-16) {
      Eigen::VectorXd y = retract(body, x + alpha * g);
      double Ly = log_objective(body, y, t, f, o);
      if (std::isfinite(Ly) && Ly >= L + 1e-4 * alpha * gn * gn) {
        x = y;
        L = Ly;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return {Direction::unchecked(body.kind(), x), std::exp(L)};
}

namespace {

Direction random_start(const Body& body, Rng& rng, int kind, double sigma) {
  const int d = body.ambient_dim();
  const int n = body.n();
  std::normal_distribution<double> g(0, 1);
  std::uniform_int_distribution<int> pick(0, d - 1);
  Eigen::VectorXd x(d);
  if (kind == 0) return sample_direction(body, rng);
  if (kind == 1) {
    x.setZero();
    switch (body.kind()) {
      case BodyKind::Simplex:
        x.setConstant(-1.0 / (n + 1));
        x[pick(rng)] += 1;
        break;
      case BodyKind::CrossPolytope: x[pick(rng)] = (rng() & 1) ? 1 : -1; break;
      case BodyKind::Cube:
        for (int i = 0; i < d; ++i) x[i] = (rng() & 1) ? 1 : -1;
        break;
    }
    x.normalize();
  } else {
    // sparse: two or three random coordinates
    x.setZero();
    int cnt = 2 + static_cast<int>(rng() % 2);
    for (int c = 0; c < cnt; ++c) x[pick(rng)] += g(rng);
    if (is_simplex(body)) x.array() -= x.mean();
    if (x.norm() < 1e-8) return sample_direction(body, rng);
    x.normalize();
  }
  for (int i = 0; i < d; ++i) x[i] += sigma * g(rng);
  if (is_simplex(body)) x.array() -= x.mean();
  return make_direction(x, body);
}

}  // namespace

MaximizeResult sphere_maximize(const Body& body, double t, Functional f, int restarts, Rng& rng,
                               const ExtremaOptions& opt) {
  if (restarts < 1) throw Error(ErrorCode::DomainError, "restarts must be >= 1");
  MaximizeResult res{extremal_direction(body), -1.0, {}, {}};
  std::uniform_real_distribution<double> u01(0, 1);
  for (int r = 0; r < restarts; ++r) {
    Rng sub(rng());
    const int kind = r % 3;
    double sigma = 0.6 * u01(sub);
    Direction start = random_start(body, sub, kind, sigma);
    int tries = 0;
    while (log_objective(body, start.coords(), t, f, opt.objective) == kNegInf && tries < 200) {
      sigma *= 0.8;
      start = random_start(body, sub, 1 + (tries % 2), sigma);
      ++tries;
    }
    auto [x, v] = ascend_from(body, start, t, f, opt);
    if (v <= 0) continue;
    Direction c = canonicalize(x);
    res.finals.push_back(c);
    res.values.push_back(v);
    if (v > res.value) {
      res.value = v;
      res.best = c;
    }
  }
  if (res.value < 0) res.value = 0;
  return res;
}

std::vector<CriticalPoint> structured_critical_points(const Body& body, double t, Functional f) {
  const int n = body.n();
  const double dn = n;
  std::vector<Eigen::VectorXd> cands;

  auto scan_roots = [](double lo, double hi, int steps, auto&& fn, std::vector<double>& roots) {
    double x0 = lo, f0 = fn(lo);
    for (int i = 1; i <= steps; ++i) {
      double x1 = lo + (hi - lo) * i / steps;
      double f1 = fn(x1);
      if (std::isfinite(f0) && std::isfinite(f1) && ((f0 < 0) != (f1 < 0))) {
        double a = x0, b = x1, fa = f0;
        for (int k = 0; k < 200 && b - a > 1e-15; ++k) {
          double mid = 0.5 * (a + b);
          double fm = fn(mid);
          if (!std::isfinite(fm)) break;
          if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        roots.push_back(0.5 * (a + b));
      }
      x0 = x1;
      f0 = f1;
    }
  };

  switch (body.kind()) {
    case BodyKind::Simplex: {
      const int k = kernel_power(body, f);
      const double top = std::sqrt(dn / (dn + 1));
      for (int m = 1; m < n; ++m) {
        const int rest = n - m;
        for (int branch : {-1, 1}) {
          auto xy = [&](double a1, double& x, double& y) {
            double disc = rest * (dn - (dn + 1) * a1 * a1) / m;
            if (disc < 0) return false;
            x = -a1 / dn + branch * std::sqrt(disc) / dn;
            y = (-a1 - m * x) / rest;
            return true;
          };
          auto resid = [&](double a1) {
            double x, y;
            if (!xy(a1, x, y)) return kNaN;
            double lam = dn - a1 * k / (a1 - t);
            double mu = -k / ((dn + 1) * (a1 - t));
            // 1/(a1-x) + lam x + mu = 0, scaled by (a1 - x)
            return 1 + (lam * x + mu) * (a1 - x);
          };
          std::vector<double> roots;
          double lo = std::max(t, -top) + 1e-12;
          if (lo >= top) continue;
          scan_roots(lo, top - 1e-12, 4000, resid, roots);
          for (double a1 : roots) {
            double x, y;
            if (!xy(a1, x, y)) continue;
            Eigen::VectorXd a(n + 1);
            a[0] = a1;
            for (int j = 1; j <= m; ++j) a[j] = x;
            for (int j = m + 1; j <= n; ++j) a[j] = y;
            cands.push_back(a);
          }
        }
      }
      cands.push_back(canonical_direction(body, Canonical::Apex).coords());
      break;
    }
    case BodyKind::CrossPolytope: {
      if (f == Functional::Volume) {
        for (int m = 1; m < n; ++m) {
          std::vector<double> roots;
          auto fn = [&](double a1) { return cross_phi(n, m, a1) - t; };
          scan_roots(1 / std::sqrt(m + 1.0) + 1e-12, 1 - 1e-12, 4000, fn, roots);
          for (double a1 : roots) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
            a[0] = a1;
            double a2 = std::sqrt((1 - a1 * a1) / m);
            for (int j = 1; j <= m; ++j) a[j] = a2;
            cands.push_back(a);
          }
        }
      }
      cands.push_back(canonical_direction(body, Canonical::Apex).coords());
      break;
    }
    case BodyKind::Cube: {
      const int k = kernel_power(body, f);
      for (int m = 1; m < n; ++m) {
        const int rest = n - m;
        auto beta = [&](double al) { return std::sqrt(std::max(0.0, (1 - m * al * al) / rest)); };
        auto resid = [&](double al) {
          double be = beta(al);
          double S = m * al + rest * be;
          // k a/(S-2t) - 1 + 2 lam a^2 = 0 with 2 lam = n - k S/(S-2t)
          double lam2 = dn - k * S / (S - 2 * t);
          return lam2 * al * al + k * al / (S - 2 * t) - 1;
        };
        std::vector<double> roots;
        scan_roots(1e-9, 1 / std::sqrt(static_cast<double>(m)) - 1e-12, 4000, resid, roots);
        for (double al : roots) {
          Eigen::VectorXd a(n);
          for (int j = 0; j < m; ++j) a[j] = al;
          for (int j = m; j < n; ++j) a[j] = beta(al);
          cands.push_back(a);
        }
      }
      cands.push_back(canonical_direction(body, Canonical::MainDiagonal).coords());
      break;
    }
  }

  std::vector<CriticalPoint> out;
  std::vector<Eigen::VectorXd> kept;
  for (const auto& c : cands) {
    if (!c.allFinite() || std::abs(c.norm() - 1) > 1e-9) continue;
    Direction d = canonicalize(Direction::unchecked(body.kind(), c));
    const Eigen::VectorXd& a = d.coords();
    // kernel domain: apex strictly above t, every other vertex strictly below
    Regime r = regime_check(SectionQuery{body, d, t});
    if (r.tag != RegimeTag::VertexSeparating) continue;
    bool dup = false;
    for (const auto& k : kept)
      if ((k - a).norm() < 1e-9) dup = true;
    if (dup) continue;
    Eigen::VectorXd g = log_kernel_gradient(body, a, t, f);
    if (!g.allFinite()) continue;
    LagrangeFit fit = lagrange_fit(body, a, g);
    if (fit.residual > 1e-9 * std::max(1.0, g.norm())) continue;
    kept.push_back(a);
    CriticalPoint cp(d);
    cp.lambda = fit.lambda;
    cp.mu = fit.mu;
    cp.residual = fit.residual;
    cp.apex = a[0];
    cp.multiplicity = group_sizes(a.tail(a.size() - 1));
    try {
      ExtremaOptions opt;
      opt.objective = Objective::Kernel;
      CriticalPoint c2 = classify(body, d, t, f, opt);
      cp.classification = c2.classification;
      cp.second_order = c2.second_order;
      cp.hessian_eigenvalues = c2.hessian_eigenvalues;
    } catch (const Error&) {
      cp.classification = Classification::Degenerate;
    }
    out.push_back(std::move(cp));
  }
  return out;
}

namespace {

struct ScanSetup {
  double analytic;
  double lo, hi;
};

ScanSetup scan_setup(const Body& body, Functional f, Objective o) {
  const int n = body.n();
  const double dn = n;
  const ConstantsTable c = thresholds(body);
  auto coef_zero = [&]() {
    switch (body.kind()) {
      case BodyKind::Simplex: return f == Functional::Volume ? c.c_volume : c.c_perimeter;
      case BodyKind::CrossPolytope:
        if (f == Functional::Volume) return c.cross_volume;
        break;
      case BodyKind::Cube: return f == Functional::Volume ? c.cube_volume : c.cube_perimeter;
    }
    throw Error(ErrorCode::Unsupported, "no analytic threshold for this body/functional pair");
  };
  switch (body.kind()) {
    case BodyKind::Simplex: {
      double top = std::sqrt(dn / (dn + 1));
      double analytic = coef_zero();
      if (o == Objective::Section && f == Functional::Perimeter) analytic = kNaN;
      return {analytic, c.lower / 2, 0.95 * top};
    }
    case BodyKind::CrossPolytope:
      return {coef_zero(), 0.02, c.d};
    case BodyKind::Cube: {
      double top = std::sqrt(dn) / 2;
      if (f == Functional::Perimeter && n == 3 && o == Objective::Section)
        return {c.p3_switch, 1 / std::sqrt(3.0) + 0.005, c.t0 - 0.002};
      double analytic = coef_zero();
      if (o == Objective::Section) {
        // the section objective only matches the kernel while a^{[n]} separates a vertex
        if (analytic <= c.regime_floor + 1e-12 || f == Functional::Perimeter) analytic = kNaN;
        return {analytic, 0.3 * top, c.d};
      }
      return {analytic, 0.05, 0.95 * top};
    }
  }
  return {kNaN, 0, 0};
}

}  // namespace

ThresholdReport threshold_scan(BodyKind kind, Functional f, int n) {
  Objective o = (kind == BodyKind::Cube && f == Functional::Perimeter && n == 3) ? Objective::Section
                                                                                 : Objective::Kernel;
  return threshold_scan(kind, f, n, o);
}

ThresholdReport threshold_scan(BodyKind kind, Functional f, int n, Objective o) {
  Body body(kind, n);
  if (kind == BodyKind::CrossPolytope && f == Functional::Perimeter)
    throw Error(ErrorCode::Unsupported, "no analytic threshold for the cross-polytope perimeter");
  ScanSetup s = scan_setup(body, f, o);
  Direction a = extremal_direction(body);
  ExtremaOptions opt;
  opt.objective = o;
  auto curv = [&](double t) { return mean_curvature(body, a, t, f, opt); };
  double lo = s.lo, hi = s.hi;
  double clo = curv(lo), chi = curv(hi);
  if (!std::isfinite(clo) || !std::isfinite(chi) || (clo < 0) == (chi < 0))
    throw Error(ErrorCode::NoFlipFound, "classification constant over the scanned interval");
  while (hi - lo > 1e-7) {
    double mid = 0.5 * (lo + hi);
    double cm = curv(mid);
    if ((cm < 0) == (clo < 0)) {
      lo = mid;
      clo = cm;
    } else {
      hi = mid;
    }
  }
  ThresholdReport r{kind, n, f, o, s.analytic, 0.5 * (lo + hi), 0, s.lo, s.hi};
  r.gap = std::abs(r.analytic - r.empirical);
  return r;
}

}  // namespace polyslice
