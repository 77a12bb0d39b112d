#include "polyslice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "polyslice/closed_form.hpp"

namespace polyslice {

namespace {

constexpr double kOnPlane = 1e-12;
constexpr double kRankTol = 1e-10;

struct Hull {
  int rank = -1;
  Eigen::VectorXd origin;
  Eigen::MatrixXd Q;  // orthonormal basis of the difference space
};

// Pivoted modified Gram-Schmidt on the differences p_i - p_0.
Hull affine_hull(const std::vector<const Eigen::VectorXd*>& P) {
  Hull h;
  if (P.empty()) return h;
  h.origin = *P[0];
  const int d = static_cast<int>(h.origin.size());
  std::vector<Eigen::VectorXd> cols;
  cols.reserve(P.size());
  for (size_t i = 1; i < P.size(); ++i) cols.push_back(*P[i] - h.origin);
  std::vector<Eigen::VectorXd> basis;
  while (static_cast<int>(basis.size()) < d && !cols.empty()) {
    size_t best = 0;
    double bn = -1;
    for (size_t i = 0; i < cols.size(); ++i) {
      double nn = cols[i].norm();
      if (nn > bn) {
        bn = nn;
        best = i;
      }
    }
    if (bn <= kRankTol) break;
    Eigen::VectorXd q = cols[best] / bn;
    // one re-orthogonalization pass against the basis
    for (const auto& e : basis) q -= e.dot(q) * e;
    q.normalize();
    basis.push_back(q);
    cols.erase(cols.begin() + static_cast<long>(best));
    for (auto& c : cols) c -= q.dot(c) * q;
  }
  h.rank = static_cast<int>(basis.size());
  h.Q.resize(d, h.rank);
  for (int i = 0; i < h.rank; ++i) h.Q.col(i) = basis[i];
  return h;
}

double distance_to(const Hull& h, const Eigen::VectorXd& c) {
  Eigen::VectorXd r = c - h.origin;
  if (h.rank > 0) r -= h.Q * (h.Q.transpose() * r);
  return r.norm();
}

class Slicer {
 public:
  Slicer(const SectionQuery& q, bool with_cap) : body_(q.body), a_(q.a.coords()), t_(q.t) {
    const int nv = body_.num_vertices();
    s_.resize(nv);
    for (int v = 0; v < nv; ++v) s_[v] = dot_vertex(body_, a_, v) - t_;
    for (int v = 0; v < nv; ++v) {
      if (std::abs(s_[v]) <= kOnPlane) add_point(body_.vertex(v), {v}, v, true);
      else if (with_cap && s_[v] > 0) add_point(body_.vertex(v), {v}, v, false);
    }
    auto edges = body_.edges();
    for (size_t e = 0; e < edges.size(); ++e) {
      auto [u, v] = edges[e];
      bool straddle = (s_[u] > kOnPlane && s_[v] < -kOnPlane) || (s_[u] < -kOnPlane && s_[v] > kOnPlane);
      if (!straddle) continue;
      double lam = s_[u] / (s_[u] - s_[v]);
      Eigen::VectorXd p = body_.vertex(u) + lam * (body_.vertex(v) - body_.vertex(u));
      add_point(std::move(p), {u, v}, nv + static_cast<int>(e), true);
    }
  }

  const std::vector<Eigen::VectorXd>& points() const { return pts_; }
  const std::vector<std::vector<int>>& supports() const { return supp_; }
  const std::vector<bool>& on_plane() const { return on_; }

  // vol_{dim F - 1}(H cap F)
  double section(const FaceDescriptor& F) {
    auto key = F.key();
    if (auto it = memo_sec_.find(key); it != memo_sec_.end()) return it->second;
    double v = compute_section(F);
    memo_sec_.emplace(std::move(key), v);
    return v;
  }

  // vol_{dim F}({x in F : <a,x> >= t})
  double cap(const FaceDescriptor& F) {
    auto key = F.key();
    if (auto it = memo_cap_.find(key); it != memo_cap_.end()) return it->second;
    double v = compute_cap(F);
    memo_cap_.emplace(std::move(key), v);
    return v;
  }

  std::vector<int> points_in(const FaceDescriptor& F, bool section_only) const {
    std::vector<int> idx;
    for (size_t i = 0; i < pts_.size(); ++i) {
      if (section_only && !on_[i]) continue;
      bool in = true;
      for (int v : supp_[i])
        if (!F.contains_vertex(v)) {
          in = false;
          break;
        }
      if (in) idx.push_back(static_cast<int>(i));
    }
    return idx;
  }

  Hull hull_of(const std::vector<int>& idx) const {
    std::vector<const Eigen::VectorXd*> P;
    P.reserve(idx.size());
    for (int i : idx) P.push_back(&pts_[i]);
    return affine_hull(P);
  }

  Eigen::VectorXd centroid(const std::vector<int>& idx) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(a_.size());
    for (int i : idx) c += pts_[i];
    return c / static_cast<double>(idx.size());
  }

  std::vector<int> ids(const std::vector<int>& idx) const {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(pid_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add_point(Eigen::VectorXd p, std::vector<int> support, int id, bool on) {
    pts_.push_back(std::move(p));
    supp_.push_back(std::move(support));
    pid_.push_back(id);
    on_.push_back(on);
  }

  double compute_section(const FaceDescriptor& F) {
    const int expected = F.dim - 1;
    if (expected < 0) return 0;
    std::vector<int> idx = points_in(F, true);
    if (idx.empty()) return 0;
    Hull h = hull_of(idx);
    if (h.rank != expected) return 0;
    if (expected == 0) return 1;
    Eigen::VectorXd c = centroid(idx);
    std::set<std::vector<int>> seen;
    double total = 0;
    for (const auto& G : F.children()) {
      std::vector<int> sub = points_in(G, true);
      if (static_cast<int>(sub.size()) < expected) continue;
      auto key = ids(sub);
      if (seen.count(key)) continue;
      double v = section(G);
      if (v == 0) continue;
      seen.insert(std::move(key));
      total += distance_to(hull_of(sub), c) * v;
    }
    return total / expected;
  }

  double compute_cap(const FaceDescriptor& F) {
    const int k = F.dim;
    std::vector<int> idx = points_in(F, false);
    if (idx.empty()) return 0;
    Hull h = hull_of(idx);
    if (h.rank != k) return 0;
    if (k == 0) return 1;
    Eigen::VectorXd c = centroid(idx);
    std::set<std::vector<int>> seen;
    double total = 0;
    for (const auto& G : F.children()) {
      std::vector<int> sub = points_in(G, false);
      if (static_cast<int>(sub.size()) < k) continue;
      auto key = ids(sub);
      if (seen.count(key)) continue;
      double v = cap(G);
      if (v == 0) continue;
      seen.insert(std::move(key));
      total += distance_to(hull_of(sub), c) * v;
    }
    std::vector<int> sec = points_in(F, true);
    if (static_cast<int>(sec.size()) >= k) {
      auto key = ids(sec);
      if (!seen.count(key)) {
        double v = section(F);
        if (v != 0) total += distance_to(hull_of(sec), c) * v;
      }
    }
    return total / k;
  }

  Body body_;
  Eigen::VectorXd a_;
  double t_;
  std::vector<double> s_;
  std::vector<Eigen::VectorXd> pts_;
  std::vector<std::vector<int>> supp_;
  std::vector<int> pid_;
  std::vector<bool> on_;
  std::unordered_map<std::string, double> memo_sec_, memo_cap_;
};

}  // namespace

SectionPolytope section_vertices(const SectionQuery& q) {
  SectionPolytope sp;
  Slicer s(q, false);
  sp.points = s.points();
  sp.support = s.supports();
  const int d = q.body.ambient_dim();
  Eigen::MatrixXd N(d, q.body.kind() == BodyKind::Simplex ? 2 : 1);
  N.col(0) = q.a.coords();
  if (q.body.kind() == BodyKind::Simplex) N.col(1) = Eigen::VectorXd::Ones(d) / std::sqrt(static_cast<double>(d));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(N);
  Eigen::MatrixXd full = qr.householderQ();
  sp.frame = full.rightCols(d - N.cols());
  return sp;
}

double section_volume_exact(const SectionQuery& q) {
  if (regime_check(q).tag == RegimeTag::Empty) return 0;
  Slicer s(q, false);
  return s.section(whole_body_face(q.body));
}

double perimeter_exact(const SectionQuery& q) {
  if (q.body.n() < 3) throw Error(ErrorCode::UnsupportedQuery, "perimeter needs n >= 3");
  if (regime_check(q).tag == RegimeTag::Empty) return 0;
  Slicer s(q, false);
  const FaceDescriptor top = whole_body_face(q.body);
  std::vector<int> all = s.points_in(top, true);
  if (all.empty() || s.hull_of(all).rank != q.body.n() - 1) return 0;
  std::set<std::vector<int>> seen;
  double total = 0;
  for (const auto& G : top.children()) {
    std::vector<int> sub = s.points_in(G, true);
    if (static_cast<int>(sub.size()) < q.body.n() - 1) continue;
    auto key = s.ids(sub);
    if (seen.count(key)) continue;
    double v = s.section(G);
    if (v == 0) continue;
    seen.insert(std::move(key));
    total += v;
  }
  return total;
}

double cap_volume(const SectionQuery& q) {
  Regime r = regime_check(q);
  if (r.tag == RegimeTag::Empty) return q.t > 0 ? 0.0 : q.body.volume();
  if (r.tag == RegimeTag::VertexSeparating) return closed_cap(q);
  Slicer s(q, true);
  return s.cap(whole_body_face(q.body));
}

Estimate section_volume_mc(const SectionQuery& q, long samples, double slab_eps, Rng& rng) {
  if (samples < 1000) throw Error(ErrorCode::DomainError, "need at least 1000 samples");
  if (slab_eps <= 0) slab_eps = 1e-3 * q.body.diameter();
  if (slab_eps > 1e-2) throw Error(ErrorCode::DomainError, "slab_eps must be in (0, 1e-2]");
  const Body& body = q.body;
  const int n = body.n();
  const Eigen::VectorXd& a = q.a.coords();
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(body.ambient_dim());
  std::vector<double> e(n + 1);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    double dot = 0;
    switch (body.kind()) {
      case BodyKind::Cube:
        for (int i = 0; i < n; ++i) dot += a[i] * unif(rng);
        break;
      case BodyKind::Simplex: {
        double sum = 0;
        for (int i = 0; i <= n; ++i) sum += (e[i] = expo(rng));
        for (int i = 0; i <= n; ++i) dot += a[i] * e[i];
        dot /= sum;
        break;
      }
      case BodyKind::CrossPolytope: {
        // uniform on {y >= 0, sum y <= 1} with random signs
        double sum = 0;
        for (int i = 0; i <= n; ++i) sum += (e[i] = expo(rng));
        std::uint64_t bits = rng();
        for (int i = 0; i < n; ++i) dot += (((bits >> i) & 1) ? -a[i] : a[i]) * e[i];
        dot /= sum;
        break;
      }
    }
    if (std::abs(dot - q.t) <= slab_eps) ++hits;
  }
  if (hits < 100) throw Error(ErrorCode::InsufficientHits, std::to_string(hits) + " slab hits");
  Estimate est;
  est.samples = samples;
  est.hits = hits;
  const double p = static_cast<double>(hits) / samples;
  const double scale = body.volume() / (2 * slab_eps);
  est.value = scale * p;
  est.std_error = scale * std::sqrt(p * (1 - p) / samples);
  return est;
}

}  // namespace polyslice
