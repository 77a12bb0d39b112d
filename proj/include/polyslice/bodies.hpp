#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyslice/error.hpp"

namespace polyslice {

enum class BodyKind { Simplex, CrossPolytope, Cube };
enum class Functional { Volume, Perimeter };

const char* to_string(BodyKind k);
const char* to_string(Functional f);
BodyKind parse_body(const std::string& s);
Functional parse_functional(const std::string& s);

using Rng = std::mt19937_64;

// Simplex: conv(e_1..e_{n+1}) in R^{n+1}; cross-polytope: conv(+-e_j);
// cube: [-1/2,1/2]^n.
class Body {
 public:
  Body(BodyKind kind, int n);

  BodyKind kind() const { return kind_; }
  int n() const { return n_; }
  int ambient_dim() const { return kind_ == BodyKind::Simplex ? n_ + 1 : n_; }
  double volume() const;
  double diameter() const;

  // Vertex ids: simplex j -> e_j; cross-polytope 2j -> +e_j, 2j+1 -> -e_j;
  // cube bitmask m -> coordinate i is +1/2 if bit i set.
  int num_vertices() const;
  Eigen::VectorXd vertex(int id) const;
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Body& o) const { return kind_ == o.kind_ && n_ == o.n_; }

 private:
  BodyKind kind_;
  int n_;
};

class Direction {
 public:
  BodyKind body() const { return body_; }
  const Eigen::VectorXd& coords() const { return a_; }
  double operator[](int i) const { return a_[i]; }
  int size() const { return static_cast<int>(a_.size()); }

  // Trusted constructor: caller guarantees the invariants up to 1e-12.
  static Direction unchecked(BodyKind body, Eigen::VectorXd a) { return Direction(body, std::move(a)); }

 private:
  Direction(BodyKind body, Eigen::VectorXd a) : body_(body), a_(std::move(a)) {}
  BodyKind body_;
  Eigen::VectorXd a_;
};

Direction make_direction(const Eigen::VectorXd& coords, const Body& body);

struct SectionQuery {
  Body body;
  Direction a;
  double t;
};

SectionQuery make_query(const Body& body, const Direction& a, double t);

enum class RegimeTag { VertexSeparating, General, Empty };
const char* to_string(RegimeTag r);

struct Regime {
  RegimeTag tag = RegimeTag::General;
  int apex = -1;  // vertex id, only for VertexSeparating
  // Normalized coordinates: apex coordinate first; remaining coordinates
  // sorted descending (simplex by value, others by absolute value).
  // Cube/cross-polytope entries are absolute values.
  Eigen::VectorXd normalized;
  std::vector<int> perm;   // normalized[i] = sign[i] * a[perm[i]]
  std::vector<int> sign;
};

Regime regime_check(const SectionQuery& q);

enum class Canonical { Apex, MainDiagonal, TwoCoordinate, Alternating };
Direction canonical_direction(const Body& body, Canonical which);

struct ConstantsTable {
  BodyKind kind;
  int n;
  double d;
  // simplex
  double c_volume = 0;
  double c_perimeter = 0;
  double lower = 0;  // smallest t with a^{(n)}-section nonempty
  // cross-polytope
  double cross_volume = 0;
  double cor1_bound = 0;
  double M = 0;
  // cube
  double cube_volume = 0;
  double cube_perimeter = 0;
  double regime_floor = 0;
  double t0 = 0, t1 = 0, p3_switch = 0;  // n = 3 only
};

ConstantsTable thresholds(const Body& body);

// Offset t at which (a1, a2 (m times), 0, ...) with a2 = sqrt((1 - a1^2)/m)
// is a critical point of the cross-polytope volume; defined for a1 >= 1/sqrt(m+1).
double cross_phi(int n, int m, double a1);

struct FaceDescriptor {
  BodyKind kind;
  int n;
  int dim;
  // simplex: 0/1 membership over n+1 vertices.
  // cross-polytope: sign per coordinate over its support (0 = absent).
  // cube: fixed coordinate value +-1, 0 = free.
  std::vector<std::int8_t> pattern;
  bool whole_body = false;

  std::vector<int> vertices() const;
  bool contains_vertex(int id) const;
  std::vector<FaceDescriptor> children() const;
  std::string key() const;
  bool operator==(const FaceDescriptor& o) const {
    return kind == o.kind && n == o.n && dim == o.dim && pattern == o.pattern && whole_body == o.whole_body;
  }
};

FaceDescriptor whole_body_face(const Body& body);
std::vector<FaceDescriptor> face_lattice(const Body& body, int dim);

Direction sample_direction(const Body& body, Rng& rng);

double dot_vertex(const Body& body, const Eigen::VectorXd& a, int vertex_id);

}  // namespace polyslice
