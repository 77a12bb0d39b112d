#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/tools/roots.hpp>

#include "polyslice/closed_form.hpp"
#include "polyslice/oracle.hpp"
#include "support.hpp"

using namespace polyslice;
using support::rel_err;
using support::vec;

namespace {

SectionQuery q_of(BodyKind k, int n, const Eigen::VectorXd& a, double t) {
  Body b(k, n);
  return make_query(b, make_direction(a, b), t);
}

SectionQuery canon(BodyKind k, int n, double t) {
  Body b(k, n);
  return make_query(b, extremal_direction(b), t);
}

// Perimeter of a simplex section as the sum of its facet sections, each
// computed as a section of the (n-1)-simplex.
double simplex_perimeter_by_facets(const SectionQuery& q) {
  const int n = q.body.n();
  Body facet(BodyKind::Simplex, n - 1);
  double sum = 0;
  for (int j = 0; j <= n; ++j) {
    const double aj = q.a[j];
    const double w2 = 1 - (n + 1.0) / n * aj * aj;
    if (w2 < 1e-12) continue;
    Eigen::VectorXd b(n);
    for (int i = 0, k = 0; i <= n; ++i)
      if (i != j) b[k++] = q.a[i] + aj / n;
    b /= std::sqrt(w2);
    const double t = (q.t + aj / n) / std::sqrt(w2);
    sum += section_volume_exact(make_query(facet, Direction::unchecked(BodyKind::Simplex, b), t));
  }
  return sum;
}

double cube_perimeter_by_facets(const SectionQuery& q) {
  const int n = q.body.n();
  Body facet(BodyKind::Cube, n - 1);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double w2 = 1 - q.a[i] * q.a[i];
    if (w2 < 1e-12) continue;
    Eigen::VectorXd b(n - 1);
    for (int j = 0, k = 0; j < n; ++j)
      if (j != i) b[k++] = q.a[j];
    b /= std::sqrt(w2);
    for (double s : {0.5, -0.5}) {
      const double t = (q.t - s * q.a[i]) / std::sqrt(w2);
      sum += section_volume_exact(make_query(facet, Direction::unchecked(BodyKind::Cube, b), t));
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("section vertices") {
  SectionPolytope tri = section_vertices(canon(BodyKind::Cube, 3, 0.8));
  REQUIRE(tri.points.size() == 3);
  const double d01 = (tri.points[0] - tri.points[1]).norm();
  CHECK((tri.points[1] - tri.points[2]).norm() == doctest::Approx(d01).epsilon(1e-12));
  CHECK((tri.points[0] - tri.points[2]).norm() == doctest::Approx(d01).epsilon(1e-12));

  SectionPolytope sq = section_vertices(q_of(BodyKind::Simplex, 3, vec({1, -1, 1, -1}), 0));
  REQUIRE(sq.points.size() == 4);
  std::vector<double> d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) d.push_back((sq.points[i] - sq.points[j]).norm());
  std::sort(d.begin(), d.end());
  for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(d[4] == doctest::Approx(1.0).epsilon(1e-12));

  SectionPolytope pt = section_vertices(canon(BodyKind::CrossPolytope, 3, 1));
  REQUIRE(pt.points.size() == 1);
  CHECK(pt.points[0].isApprox(vec({1, 0, 0})));
}

TEST_CASE("section vertices lie on the hyperplane and in the body") {
  Rng rng(31);
  for (BodyKind k : support::kAllBodies) {
    for (int n = 2; n <= 6; ++n) {
      Body body(k, n);
      for (int s = 0; s < 20; ++s) {
        SectionQuery q = support::any_query(body, rng);
        SectionPolytope sp = section_vertices(q);
        for (size_t i = 0; i < sp.points.size(); ++i) {
          const Eigen::VectorXd& p = sp.points[i];
          CHECK(std::abs(q.a.coords().dot(p) - q.t) < 1e-10);
          switch (k) {
            case BodyKind::Simplex:
              CHECK(p.minCoeff() > -1e-10);
              CHECK(std::abs(p.sum() - 1) < 1e-10);
              break;
            case BodyKind::CrossPolytope: CHECK(p.lpNorm<1>() < 1 + 1e-10); break;
            case BodyKind::Cube: CHECK(p.lpNorm<Eigen::Infinity>() < 0.5 + 1e-10); break;
          }
          for (size_t j = 0; j < i; ++j) CHECK((p - sp.points[j]).norm() > 1e-12);
        }
        CHECK(sp.frame.cols() == n - 1);
      }
    }
  }
}

TEST_CASE("exact section volumes") {
  CHECK(section_volume_exact(q_of(BodyKind::Cube, 3, vec({1, 0, 0}), 0)) == doctest::Approx(1).epsilon(1e-13));
  CHECK(section_volume_exact(q_of(BodyKind::Simplex, 3, vec({1, -1, 1, -1}), 0)) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(section_volume_exact(canon(BodyKind::CrossPolytope, 4, 0)) == doctest::Approx(4.0 / 3).epsilon(1e-13));
  CHECK(section_volume_exact(canon(BodyKind::Simplex, 3, 0)) ==
        doctest::Approx(9 * std::sqrt(3.0) / 32).epsilon(1e-13));
  CHECK(section_volume_exact(q_of(BodyKind::Cube, 4, vec({1, 1, 0, 0}), 0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(section_volume_exact(canon(BodyKind::Cube, 4, 1.5)) == 0.0);
}

TEST_CASE("exact perimeters") {
  CHECK(perimeter_exact(canon(BodyKind::Simplex, 3, 0)) == doctest::Approx(9 * std::sqrt(2.0) / 4).epsilon(1e-13));
  CHECK(perimeter_exact(q_of(BodyKind::Simplex, 3, vec({1, -1, 1, -1}), 0)) ==
        doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(perimeter_exact(canon(BodyKind::CrossPolytope, 3, 0)) == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(perimeter_exact(canon(BodyKind::Cube, 4, 1)) == 0.0);
  // the facet itself: its boundary has 2(n-1) ridges of unit volume
  CHECK(perimeter_exact(q_of(BodyKind::Cube, 4, vec({1, 0, 0, 0}), 0.5)) == doctest::Approx(6).epsilon(1e-13));
  CHECK_THROWS_AS(perimeter_exact(canon(BodyKind::Cube, 2, 0.1)), Error);
}

TEST_CASE("explicit cross-polytope example through the oracle") {
  // a~ = (3,2,2,2,2)/5, t = 2/5: the section is (2/3)(3/5)^3 and A(e_1,2/5) = (2/3)(3/5)^4
  const double tilde = section_volume_exact(q_of(BodyKind::CrossPolytope, 5, vec({3, 2, 2, 2, 2}), 0.4));
  const double e1 = section_volume_exact(canon(BodyKind::CrossPolytope, 5, 0.4));
  CHECK(tilde == doctest::Approx(18.0 / 125).epsilon(1e-12));
  CHECK(e1 == doctest::Approx(0.0864).epsilon(1e-12));
  CHECK(tilde / e1 == doctest::Approx(5.0 / 3).epsilon(1e-12));
}

TEST_CASE("simplex perimeter at t = 1/2 along the apex direction") {
  CHECK(perimeter_exact(canon(BodyKind::Simplex, 3, 0.5)) ==
        doctest::Approx((9 * std::sqrt(2.0) - 3 * std::sqrt(6.0)) / 4).epsilon(1e-12));
}

TEST_CASE("perimeter equals the sum of facet sections") {
  Rng rng(41);
  for (int n = 3; n <= 6; ++n) {
    for (int s = 0; s < 15; ++s) {
      SectionQuery qs = support::any_query(Body(BodyKind::Simplex, n), rng);
      CHECK(rel_err(perimeter_exact(qs), simplex_perimeter_by_facets(qs)) < 1e-9);
      SectionQuery qc = support::any_query(Body(BodyKind::Cube, n), rng);
      CHECK(rel_err(perimeter_exact(qc), cube_perimeter_by_facets(qc)) < 1e-9);
    }
  }
}

TEST_CASE("section volumes integrate to the body volume") {
  Rng rng(53);
  for (BodyKind k : support::kAllBodies) {
    for (int n = 2; n <= 5; ++n) {
      Body body(k, n);
      for (int s = 0; s < 4; ++s) {
        Direction a = sample_direction(body, rng);
        CHECK(rel_err(support::integrate_sections(body, a), body.volume()) < 1e-9);
      }
    }
  }
}

TEST_CASE("cube n = 3: diagonal and two-coordinate sections cross at 0.32 and 0.642") {
  Body c(BodyKind::Cube, 3);
  Direction d3 = canonical_direction(c, Canonical::MainDiagonal);
  Direction d2 = canonical_direction(c, Canonical::TwoCoordinate);
  auto g = [&](double t) {
    return section_volume_exact(make_query(c, d3, t)) - section_volume_exact(make_query(c, d2, t));
  };
  boost::math::tools::eps_tolerance<double> tol(40);
  auto hi = boost::math::tools::bisect(g, 0.6, 0.68, tol);
  CHECK(hi.first == doctest::Approx(0.642).epsilon(1e-3));
  auto lo = boost::math::tools::bisect(g, 0.3, 0.33, tol);
  CHECK(lo.first == doctest::Approx(0.32).epsilon(2e-3));
}

TEST_CASE("cap volume") {
  Body cube(BodyKind::Cube, 4);
  Rng rng(61);
  Direction a = sample_direction(cube, rng);
  CHECK(cap_volume(make_query(cube, a, -0.5 * a.coords().lpNorm<1>() - 1e-3)) == doctest::Approx(1));
  const double top = std::sqrt(0.75);
  CHECK(cap_volume(canon(BodyKind::Simplex, 3, top)) == 0.0);

  const double h = 1e-5;
  SectionQuery q = canon(BodyKind::Cube, 4, 0.9);
  const double fd = (cap_volume(make_query(cube, q.a, 0.9 - h)) - cap_volume(make_query(cube, q.a, 0.9 + h))) / (2 * h);
  CHECK(std::abs(fd - closed_A(q).value) < 1e-6);

  for (BodyKind k : support::kAllBodies) {
    Body body(k, 4);
    for (int s = 0; s < 7; ++s) {
      SectionQuery r = support::any_query(body, rng);
      const double d = 1e-4;
      const double fd2 = (cap_volume(make_query(body, r.a, r.t - d)) - cap_volume(make_query(body, r.a, r.t + d))) / (2 * d);
      CHECK(rel_err(fd2, section_volume_exact(r)) < 1e-5);
    }
  }
}

TEST_CASE("Monte Carlo estimates") {
  Rng rng(1);
  Estimate e = section_volume_mc(q_of(BodyKind::Cube, 3, vec({1, 0, 0}), 0), 1000000, 1e-3, rng);
  CHECK(e.std_error > 0);
  CHECK(std::abs(e.value - 1) < 3 * e.std_error);

  SectionQuery q = canon(BodyKind::Simplex, 4, 0.2);
  const double exact = section_volume_exact(q);
  Estimate s = section_volume_mc(q, 1000000, 0, rng);
  CHECK(std::abs(s.value - exact) < 3 * s.std_error);

  Rng r1(5), r2(5);
  SectionQuery c = canon(BodyKind::CrossPolytope, 3, 0.2);
  CHECK(section_volume_mc(c, 200000, 0, r1).value == section_volume_mc(c, 200000, 0, r2).value);

  try {
    section_volume_mc(canon(BodyKind::Cube, 3, 2.0), 10000, 0, rng);
    FAIL("expected InsufficientHits");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InsufficientHits);
  }
}
