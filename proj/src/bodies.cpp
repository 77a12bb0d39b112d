#include "polyslice/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyslice {

namespace {

constexpr double kTie = 1e-12;

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void combinations(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  if (k > n) return;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::UnsupportedQuery: return "UnsupportedQuery";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::InsufficientHits: return "InsufficientHits";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::NoFlipFound: return "NoFlipFound";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::IOError: return "IOError";
  }
  return "Error";
}

const char* to_string(BodyKind k) {
  switch (k) {
    case BodyKind::Simplex: return "simplex";
    case BodyKind::CrossPolytope: return "crosspolytope";
    case BodyKind::Cube: return "cube";
  }
  return "?";
}

const char* to_string(Functional f) { return f == Functional::Volume ? "volume" : "perimeter"; }

const char* to_string(RegimeTag r) {
  switch (r) {
    case RegimeTag::VertexSeparating: return "VertexSeparating";
    case RegimeTag::General: return "General";
    case RegimeTag::Empty: return "Empty";
  }
  return "?";
}

BodyKind parse_body(const std::string& s) {
  if (s == "simplex") return BodyKind::Simplex;
  if (s == "crosspolytope" || s == "cross") return BodyKind::CrossPolytope;
  if (s == "cube") return BodyKind::Cube;
  throw Error(ErrorCode::Unsupported, "unknown body '" + s + "'");
}

Functional parse_functional(const std::string& s) {
  if (s == "volume" || s == "A") return Functional::Volume;
  if (s == "perimeter" || s == "P") return Functional::Perimeter;
  throw Error(ErrorCode::Unsupported, "unknown functional '" + s + "'");
}

Body::Body(BodyKind kind, int n) : kind_(kind), n_(n) {
  if (n < 2) throw Error(ErrorCode::DimensionOutOfRange, "n must be >= 2");
}

double Body::volume() const {
  switch (kind_) {
    case BodyKind::Simplex: return std::sqrt(n_ + 1.0) / factorial(n_);
    case BodyKind::CrossPolytope: return std::ldexp(1.0, n_) / factorial(n_);
    case BodyKind::Cube: return 1.0;
  }
  return 0;
}

double Body::diameter() const {
  switch (kind_) {
    case BodyKind::Simplex: return std::sqrt(2.0);
    case BodyKind::CrossPolytope: return 2.0;
    case BodyKind::Cube: return std::sqrt(static_cast<double>(n_));
  }
  return 0;
}

int Body::num_vertices() const {
  switch (kind_) {
    case BodyKind::Simplex: return n_ + 1;
    case BodyKind::CrossPolytope: return 2 * n_;
    case BodyKind::Cube: return 1 << n_;
  }
  return 0;
}

Eigen::VectorXd Body::vertex(int id) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ambient_dim());
  switch (kind_) {
    case BodyKind::Simplex: v[id] = 1; break;
    case BodyKind::CrossPolytope: v[id / 2] = (id % 2 == 0) ? 1 : -1; break;
    case BodyKind::Cube:
      for (int i = 0; i < n_; ++i) v[i] = ((id >> i) & 1) ? 0.5 : -0.5;
      break;
  }
  return v;
}

std::vector<std::pair<int, int>> Body::edges() const {
  std::vector<std::pair<int, int>> e;
  const int nv = num_vertices();
  switch (kind_) {
    case BodyKind::Simplex:
      for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) e.emplace_back(i, j);
      break;
    case BodyKind::CrossPolytope:
      for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
          if (i / 2 != j / 2) e.emplace_back(i, j);
      break;
    case BodyKind::Cube:
      for (int m = 0; m < nv; ++m)
        for (int i = 0; i < n_; ++i)
          if (!((m >> i) & 1)) e.emplace_back(m, m | (1 << i));
      break;
  }
  return e;
}

double dot_vertex(const Body& body, const Eigen::VectorXd& a, int id) {
  switch (body.kind()) {
    case BodyKind::Simplex: return a[id];
    case BodyKind::CrossPolytope: return (id % 2 == 0) ? a[id / 2] : -a[id / 2];
    case BodyKind::Cube: {
      double s = 0;
      for (int i = 0; i < body.n(); ++i) s += ((id >> i) & 1) ? 0.5 * a[i] : -0.5 * a[i];
      return s;
    }
  }
  return 0;
}

Direction make_direction(const Eigen::VectorXd& coords, const Body& body) {
  if (coords.size() != body.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(body.ambient_dim()) + " coordinates, got " +
                    std::to_string(coords.size()));
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    if (!std::isfinite(coords[i])) throw Error(ErrorCode::DomainError, "non-finite coordinate");
  Eigen::VectorXd a = coords;
  if (body.kind() == BodyKind::Simplex) a.array() -= a.mean();
  double nrm = a.norm();
  if (nrm < 1e-14) throw Error(ErrorCode::ZeroVector, "direction vanishes");
  a /= nrm;
  if (body.kind() == BodyKind::Simplex) {
    // one more pass so the sum is zero to rounding
    a.array() -= a.mean();
    a /= a.norm();
  }
  return Direction::unchecked(body.kind(), std::move(a));
}

SectionQuery make_query(const Body& body, const Direction& a, double t) {
  if (a.body() != body.kind() || a.size() != body.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "direction does not belong to body");
  if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "t must be finite");
  return SectionQuery{body, a, t};
}

Regime regime_check(const SectionQuery& q) {
  const Body& body = q.body;
  const Eigen::VectorXd& a = q.a.coords();
  const double t = q.t;
  const int dim = body.ambient_dim();
  Regime r;
  r.perm.resize(dim);
  r.sign.assign(dim, 1);
  std::iota(r.perm.begin(), r.perm.end(), 0);

  double vmax = 0, vmin = 0;
  switch (body.kind()) {
    case BodyKind::Simplex: vmax = a.maxCoeff(); vmin = a.minCoeff(); break;
    case BodyKind::CrossPolytope: vmax = a.cwiseAbs().maxCoeff(); vmin = -vmax; break;
    case BodyKind::Cube: vmax = 0.5 * a.cwiseAbs().sum(); vmin = -vmax; break;
  }

  if (body.kind() == BodyKind::Simplex) {
    std::stable_sort(r.perm.begin(), r.perm.end(), [&](int i, int j) { return a[i] > a[j]; });
  } else {
    for (int i = 0; i < dim; ++i) r.sign[i] = a[i] < 0 ? -1 : 1;
    std::stable_sort(r.perm.begin(), r.perm.end(),
                     [&](int i, int j) { return std::abs(a[i]) > std::abs(a[j]); });
    std::vector<int> s(dim);
    for (int i = 0; i < dim; ++i) s[i] = r.sign[r.perm[i]];
    r.sign = s;
  }
  r.normalized.resize(dim);
  for (int i = 0; i < dim; ++i) r.normalized[i] = r.sign[i] * a[r.perm[i]];

  if (t > vmax + kTie || t < vmin - kTie) {
    r.tag = RegimeTag::Empty;
    return r;
  }

  const Eigen::VectorXd& b = r.normalized;
  bool sep = false;
  switch (body.kind()) {
    case BodyKind::Simplex:
      sep = b[0] > t + kTie && t > b[1] + kTie;
      if (sep) r.apex = r.perm[0];
      break;
    case BodyKind::CrossPolytope:
      sep = b[0] > t + kTie && (dim < 2 || t > b[1] + kTie);
      if (sep) r.apex = 2 * r.perm[0] + (r.sign[0] < 0 ? 1 : 0);
      break;
    case BodyKind::Cube: {
      double half = 0.5 * b.sum();
      sep = half > t + kTie && t > half - b[dim - 1] + kTie;
      if (sep) {
        int m = 0;
        for (int i = 0; i < dim; ++i)
          if (a[i] >= 0) m |= 1 << i;
        r.apex = m;
      }
      break;
    }
  }
  r.tag = sep ? RegimeTag::VertexSeparating : RegimeTag::General;
  return r;
}

Direction canonical_direction(const Body& body, Canonical which) {
  const int n = body.n();
  const int dim = body.ambient_dim();
  Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
  auto unsupported = [&]() {
    return Error(ErrorCode::Unsupported, "canonical direction not defined for this body");
  };
  switch (body.kind()) {
    case BodyKind::Simplex:
      if (which == Canonical::Apex) {
        a.setConstant(-1.0 / std::sqrt(n * (n + 1.0)));
        a[0] = std::sqrt(n / (n + 1.0));
      } else if (which == Canonical::TwoCoordinate) {
        a[0] = 1 / std::sqrt(2.0);
        a[1] = -1 / std::sqrt(2.0);
      } else if (which == Canonical::Alternating) {
        if (n % 2 == 0) throw unsupported();
        const double s = 1 / std::sqrt(static_cast<double>(dim));
        for (int i = 0; i < dim; ++i) a[i] = (i % 2 == 0) ? s : -s;
      } else {
        throw unsupported();
      }
      break;
    case BodyKind::CrossPolytope:
      if (which != Canonical::Apex) throw unsupported();
      a[0] = 1;
      break;
    case BodyKind::Cube:
      if (which == Canonical::MainDiagonal) {
        a.setConstant(1 / std::sqrt(static_cast<double>(n)));
      } else if (which == Canonical::TwoCoordinate) {
        a[0] = a[1] = 1 / std::sqrt(2.0);
      } else {
        throw unsupported();
      }
      break;
  }
  return Direction::unchecked(body.kind(), std::move(a));
}

double cross_phi(int n, int m, double a1) {
  const double a2 = a1 * a1;
  return ((m + 1) * a2 + 2 * m - 1) * a1 / ((m + 1) * n * a2 + 2 * m - n);
}

ConstantsTable thresholds(const Body& body) {
  const int n = body.n();
  const double dn = n;
  ConstantsTable c{body.kind(), n, 0};
  switch (body.kind()) {
    case BodyKind::Simplex: {
      const double s = std::sqrt(dn / (dn + 1));
      c.d = std::sqrt((dn - 1) / (2 * (dn + 1)));
      c.c_volume = (2 * dn + 1) / (dn * (dn + 2)) * s;
      c.c_perimeter = (3 * dn + 2) / (dn * (dn + 2)) * s;
      c.lower = -1 / std::sqrt(dn * (dn + 1));
      break;
    }
    case BodyKind::CrossPolytope:
      c.d = 1 / std::sqrt(2.0);
      c.cross_volume = 3 / (dn + 2);
      c.cor1_bound = 4 / dn;
      if (n == 3) c.M = 1 / std::sqrt(3.0);
      else if (n == 4) c.M = 5 * std::sqrt(10.0) / 32;
      else if (n == 5) c.M = 7 * std::sqrt(21.0) / 75;
      else c.M = 3 / (dn + 2);
      break;
    case BodyKind::Cube: {
      const double r = std::sqrt(dn);
      c.d = std::sqrt(dn - 1) / 2;
      c.cube_volume = (dn + 1) / (4 * r);
      c.cube_perimeter = (dn + 2) / (4 * r);
      c.regime_floor = (dn - 2) / (2 * r);
      if (n == 3) {
        const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
        c.t0 = (s3 + 8 * s2) / 18;
        c.t1 = (std::sqrt(18 + 10 * s3) - std::sqrt(6 - 2 * s3)) / 6;
        c.p3_switch = 11 * s3 / 30;
      }
      break;
    }
  }
  return c;
}

std::vector<int> FaceDescriptor::vertices() const {
  std::vector<int> v;
  switch (kind) {
    case BodyKind::Simplex:
      for (int j = 0; j <= n; ++j)
        if (pattern[j]) v.push_back(j);
      break;
    case BodyKind::CrossPolytope:
      for (int j = 0; j < n; ++j) {
        if (whole_body) {
          v.push_back(2 * j);
          v.push_back(2 * j + 1);
        } else if (pattern[j] != 0) {
          v.push_back(2 * j + (pattern[j] < 0 ? 1 : 0));
        }
      }
      break;
    case BodyKind::Cube: {
      std::vector<int> freec;
      int base = 0;
      for (int i = 0; i < n; ++i) {
        if (pattern[i] == 0) freec.push_back(i);
        else if (pattern[i] > 0) base |= 1 << i;
      }
      for (int s = 0; s < (1 << freec.size()); ++s) {
        int m = base;
        for (size_t k = 0; k < freec.size(); ++k)
          if ((s >> k) & 1) m |= 1 << freec[k];
        v.push_back(m);
      }
      break;
    }
  }
  return v;
}

bool FaceDescriptor::contains_vertex(int id) const {
  switch (kind) {
    case BodyKind::Simplex: return pattern[id] != 0;
    case BodyKind::CrossPolytope:
      return whole_body || pattern[id / 2] == ((id % 2 == 0) ? 1 : -1);
    case BodyKind::Cube:
      for (int i = 0; i < n; ++i) {
        if (pattern[i] == 0) continue;
        if ((pattern[i] > 0) != static_cast<bool>((id >> i) & 1)) return false;
      }
      return true;
  }
  return false;
}

std::vector<FaceDescriptor> FaceDescriptor::children() const {
  std::vector<FaceDescriptor> out;
  if (dim == 0) return out;
  switch (kind) {
    case BodyKind::Simplex:
      for (int j = 0; j <= n; ++j) {
        if (!pattern[j]) continue;
        FaceDescriptor f = *this;
        f.whole_body = false;
        f.pattern[j] = 0;
        f.dim = dim - 1;
        out.push_back(std::move(f));
      }
      break;
    case BodyKind::CrossPolytope:
      if (whole_body) {
        for (int s = 0; s < (1 << n); ++s) {
          FaceDescriptor f{kind, n, n - 1, std::vector<std::int8_t>(n), false};
          for (int j = 0; j < n; ++j) f.pattern[j] = ((s >> j) & 1) ? -1 : 1;
          out.push_back(std::move(f));
        }
      } else {
        for (int j = 0; j < n; ++j) {
          if (pattern[j] == 0) continue;
          FaceDescriptor f = *this;
          f.pattern[j] = 0;
          f.dim = dim - 1;
          out.push_back(std::move(f));
        }
      }
      break;
    case BodyKind::Cube:
      for (int i = 0; i < n; ++i) {
        if (pattern[i] != 0) continue;
        for (int s : {-1, 1}) {
          FaceDescriptor f = *this;
          f.whole_body = false;
          f.pattern[i] = static_cast<std::int8_t>(s);
          f.dim = dim - 1;
          out.push_back(std::move(f));
        }
      }
      break;
  }
  return out;
}

std::string FaceDescriptor::key() const {
  std::string k(pattern.size() + 1, '\0');
  for (size_t i = 0; i < pattern.size(); ++i) k[i] = static_cast<char>(pattern[i] + 2);
  k.back() = whole_body ? 'B' : 'F';
  return k;
}

FaceDescriptor whole_body_face(const Body& body) {
  const int n = body.n();
  switch (body.kind()) {
    case BodyKind::Simplex:
      return FaceDescriptor{body.kind(), n, n, std::vector<std::int8_t>(n + 1, 1), true};
    case BodyKind::CrossPolytope:
      return FaceDescriptor{body.kind(), n, n, std::vector<std::int8_t>(n, 0), true};
    case BodyKind::Cube:
      return FaceDescriptor{body.kind(), n, n, std::vector<std::int8_t>(n, 0), true};
  }
  return {};
}

std::vector<FaceDescriptor> face_lattice(const Body& body, int dim) {
  const int n = body.n();
  if (dim < 0 || dim > n - 1) throw Error(ErrorCode::DimensionOutOfRange, "face dimension out of range");
  std::vector<FaceDescriptor> out;
  std::vector<std::vector<int>> combos;
  switch (body.kind()) {
    case BodyKind::Simplex:
      combinations(n + 1, dim + 1, combos);
      for (const auto& c : combos) {
        FaceDescriptor f{body.kind(), n, dim, std::vector<std::int8_t>(n + 1, 0), false};
        for (int j : c) f.pattern[j] = 1;
        out.push_back(std::move(f));
      }
      break;
    case BodyKind::CrossPolytope:
      combinations(n, dim + 1, combos);
      for (const auto& c : combos)
        for (int s = 0; s < (1 << (dim + 1)); ++s) {
          FaceDescriptor f{body.kind(), n, dim, std::vector<std::int8_t>(n, 0), false};
          for (int k = 0; k <= dim; ++k) f.pattern[c[k]] = ((s >> k) & 1) ? -1 : 1;
          out.push_back(std::move(f));
        }
      break;
    case BodyKind::Cube:
      combinations(n, dim, combos);
      for (const auto& c : combos) {
        std::vector<int> fixed;
        for (int i = 0, k = 0; i < n; ++i) {
          if (k < dim && c[k] == i) ++k;
          else fixed.push_back(i);
        }
        for (int s = 0; s < (1 << fixed.size()); ++s) {
          FaceDescriptor f{body.kind(), n, dim, std::vector<std::int8_t>(n, 0), false};
          for (size_t k = 0; k < fixed.size(); ++k) f.pattern[fixed[k]] = ((s >> k) & 1) ? 1 : -1;
          out.push_back(std::move(f));
        }
      }
      break;
  }
  return out;
}

Direction sample_direction(const Body& body, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int dim = body.ambient_dim();
  Eigen::VectorXd x(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) x[i] = g(rng);
    if (body.kind() == BodyKind::Simplex) x.array() -= x.mean();
    if (x.norm() > 1e-10) return make_direction(x, body);
  }
}

}  // namespace polyslice
