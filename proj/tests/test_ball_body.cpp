#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"

#include <cmath>

using namespace wideball;

namespace {

double max_dist(const Vec& c, const GeneratorSet& X) {
  double m = 0.0;
  for (const auto& x : X.points()) m = std::max(m, geo::dist(c, x.coords()));
  return m;
}

// Points of X^r by rejection in the Jung cap around the Chebyshev center.
std::vector<Vec> interior_sample(const GeneratorSet& X, std::size_t want, std::uint64_t seed) {
  const Inscribed in = inradius_nd(X);
  geo::CapSampler cap(in.center.coords(), X.radius());
  Rng rng(seed);
  std::vector<Vec> out;
  Vec y;
  const double cos_r = std::cos(X.radius());
  for (std::size_t it = 0; it < 200 * want && out.size() < want; ++it) {
    cap.sample(rng, y);
    if ((X.matrix().transpose() * y).minCoeff() >= cos_r) out.push_back(y);
  }
  return out;
}

}  // namespace

TEST_CASE("circumradius of one and two points") {
  const UnitVector x{0.3, 0.1, -0.9};
  const Circumball one = circumradius_minimax(std::vector<UnitVector>{x});
  CHECK(one.radius < 1e-12);
  CHECK(spherical_distance(one.center, x) < 1e-12);

  const double delta = 0.9;
  const UnitVector a{1, 0, 0, 0}, b{std::cos(delta), std::sin(delta), 0, 0};
  const Circumball two = circumradius_minimax(std::vector<UnitVector>{a, b});
  CHECK(two.radius == doctest::Approx(delta / 2.0).epsilon(1e-12));
  CHECK(geo::dist(two.center.coords(), geo::midpoint(a.coords(), b.coords())) < 1e-10);
}

TEST_CASE("circumradius of the regular simplex matches the centroid formula") {
  for (int d : {2, 3, 4, 7}) {
    for (double r : {0.3, 0.8, kHalfPi}) {
      const SimplexBody s = regular_simplex(d, r);
      const Circumball cb = circumradius_minimax(s.vertices);
      const double expected = std::acos(std::sqrt((1.0 + d * std::cos(r)) / (d + 1.0)));
      CHECK(cb.radius == doctest::Approx(expected).epsilon(1e-11));
      // Equidistance of the returned center.
      for (const auto& v : s.vertices) CHECK(spherical_distance(cb.center, v) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("circumcenter is a local minimum of the max distance") {
  for (int d : {2, 3, 4}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const GeneratorSet X = sample_wide_generator(d, 0.9, 8, 20 + s);
      const Circumball cb = circumradius_minimax(X.points());
      const Vec c = cb.center.coords();
      CHECK(max_dist(c, X) == doctest::Approx(cb.radius).epsilon(1e-10));
      Rng rng(s);
      const Mat T = geo::tangent_basis(c);
      for (int k = 0; k < 20; ++k) {
        Vec dir = T * geo::random_unit(d - 1, rng).head(d);
        dir.normalize();
        CHECK(max_dist(geo::walk(c, dir, 1e-4), X) >= cb.radius - 1e-8);
      }
      // First-order witness: the support weights rebuild the center.
      Vec w = Vec::Zero(d + 1);
      for (std::size_t i = 0; i < cb.support.size(); ++i) w += cb.weights[i] * X[cb.support[i]].coords();
      CHECK(geo::dist(w.normalized(), c) < 1e-8);
    }
  }
}

TEST_CASE("circumradius needs an open hemisphere") {
  const UnitVector a{1, 0, 0}, b{-1, 0, 0};
  CHECK_THROWS_AS(circumradius_minimax(std::vector<UnitVector>{a, b}), InfeasibleError);
  CHECK_THROWS_AS(circumradius_minimax(std::vector<UnitVector>{}), InputError);
}

TEST_CASE("Jung radius") {
  CHECK(jung_circumradius(2, kHalfPi) == doctest::Approx(0.9553166181245093).epsilon(1e-14));
  const Circumball cb = circumradius_minimax(std::vector<UnitVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(cb.radius == doctest::Approx(jung_circumradius(2, kHalfPi)).epsilon(1e-12));
  for (double r : {0.3, 0.7, kHalfPi}) {
    for (int d = 2; d < 10; ++d) CHECK(jung_circumradius(d + 1, r) > jung_circumradius(d, r));
  }
  for (int d : {2, 3, 4}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const double r = 0.2 + 1.3 * static_cast<double>(s % 10) / 9.0;
      const GeneratorSet X = sample_wide_generator(d, std::min(r, kHalfPi), 1 + s % 20, 300 + s);
      CHECK(circumradius_minimax(X.points()).radius <= jung_circumradius(d, X.radius()) + 1e-9);
    }
  }
}

TEST_CASE("inradius") {
  const UnitVector x{0, 0, 0, 1};
  const Inscribed one = inradius_nd(GeneratorSet(3, 0.4, {x}));
  CHECK(one.radius == doctest::Approx(0.4));
  CHECK(spherical_distance(one.center, x) < 1e-12);

  for (int d : {2, 3, 4, 5}) {
    for (double r : {0.3, 0.7, kHalfPi}) {
      const Inscribed in = inradius_nd(regular_simplex(d, r).generators());
      CHECK(std::abs(in.radius - (r - jung_circumradius(d, r))) < 1e-10);
      for (std::uint64_t s = 0; s < 20; ++s) {
        const GeneratorSet X = sample_wide_generator(d, r, 2 + s, 40 * d + s);
        const Inscribed ins = inradius_nd(X);
        CHECK(ins.radius >= r - jung_circumradius(d, r) - 1e-9);
        // The inscribed ball is inside every generator ball.
        CHECK(max_dist(ins.center.coords(), X) + ins.radius <= r + 1e-9);
      }
    }
  }
}

TEST_CASE("regular simplex Gram matrix") {
  for (int d : {2, 3, 6}) {
    const SimplexBody s = regular_simplex(d, 0.7);
    REQUIRE(s.vertices.size() == static_cast<std::size_t>(d + 1));
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      for (std::size_t j = 0; j < s.vertices.size(); ++j) {
        const double g = s.vertices[i].coords().dot(s.vertices[j].coords());
        CHECK(g == doctest::Approx(i == j ? 1.0 : std::cos(0.7)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("dual boundary samples lie on the boundary") {
  for (int d : {2, 3, 4}) {
    const GeneratorSet X = sample_wide_generator(d, 0.8, 10, 70 + d);
    const auto pts = sample_dual_boundary(X, {100, 50}, 1);
    CHECK_FALSE(pts.empty());
    for (const auto& p : pts) {
      CHECK(dual_membership(p, X, 1e-9));
      CHECK(max_dist(p.coords(), X) == doctest::Approx(0.8).epsilon(1e-8));
    }
  }
}

TEST_CASE("r-hull of a point collapses to the point") {
  const RHull h = r_hull(GeneratorSet(2, 0.6, {UnitVector{0, 0, 1}}), 300, 3);
  CHECK(h.hull_diameter < 1e-3);
  const RHull h3 = r_hull(GeneratorSet(3, 0.6, {UnitVector{0, 0, 0, 1}}), 300, 3);
  CHECK(h3.hull_diameter < 1e-3);
}

TEST_CASE("r-hull of the Reuleaux triangle is the triangle") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const RHull h = r_hull(reuleaux_triangle(r), 400, 5);
    CHECK(std::abs(h.hull_diameter - r) < 5e-3);
  }
}

TEST_CASE("r-hull diameter bound and generator containment") {
  for (int d : {2, 3, 4}) {
    for (std::uint64_t s = 0; s < 15; ++s) {
      const double r = s % 3 == 0 ? 0.3 : (s % 3 == 1 ? 0.7 : kHalfPi);
      const GeneratorSet X = sample_wide_generator(d, r, 1 + s, 500 + 17 * d + s);
      const RHull h = r_hull(X, 300, s);
      CHECK(h.hull_diameter <= r + 5e-3);
      // X lies in the dual of any subset of X^r.
      for (const auto& x : X.points()) {
        for (const auto& p : h.support) CHECK(spherical_distance(x, p) <= r + 1e-9);
      }
    }
  }
}

TEST_CASE("duality reverses inclusion and turns unions into intersections") {
  const double r = 0.8;
  const GeneratorSet X = sample_wide_generator(3, r, 6, 8);
  const GeneratorSet Y = sample_wide_generator(3, r, 6, 8);  // same seed: Y = X
  std::vector<UnitVector> half(X.points().begin(), X.points().begin() + 3);
  const GeneratorSet H(3, r, half);
  for (const auto& y : sample_uniform(3, 20000, 4)) {
    if (dual_membership(y, X)) CHECK(dual_membership(y, H));
  }
  // Split X into two parts and check pointwise that membership in the dual of the
  // union is the conjunction.
  std::vector<UnitVector> rest(X.points().begin() + 3, X.points().end());
  const GeneratorSet R(3, r, rest);
  for (const auto& y : sample_uniform(3, 20000, 5)) {
    CHECK(dual_membership(y, X) == (dual_membership(y, H) && dual_membership(y, R)));
  }
  CHECK(X.matrix() == Y.matrix());
}

TEST_CASE("supporting ball at a boundary point contains the body") {
  // At a vertex of a disk polygon, any normal direction between the two arc
  // normals gives a supporting great circle; the radius-r ball tangent there on
  // the inner side must contain the whole domain.
  for (std::uint64_t s = 0; s < 10; ++s) {
    const double r = 0.9;
    const GeneratorSet X = sample_wide_generator(2, r, 6, 1000 + s);
    const ArcBoundary b = boundary_structure(X);
    if (b.arcs.size() < 2) continue;
    const auto inside = interior_sample(X, 3000, s);
    for (std::size_t k = 0; k < b.arcs.size(); ++k) {
      const Vec v = b.arcs[k].to.coords();
      const Vec n1 = geo::tangent_toward(v, b.arcs[k].center.coords());
      const Vec n2 = geo::tangent_toward(v, b.arcs[(k + 1) % b.arcs.size()].center.coords());
      for (double t : {0.0, 0.3, 0.7, 1.0}) {
        const Vec n = ((1.0 - t) * n1 + t * n2).normalized();
        const Vec centre = geo::walk(v, n, r);
        for (const auto& y : inside) CHECK(geo::dist(centre, y) <= r + 1e-9);
      }
    }
  }
}

TEST_CASE("width estimate of the simplex body") {
  const WidthEstimate w = width_nd(regular_simplex(3, 0.8).generators(), 3000, 1);
  CHECK(std::abs(w.value - 0.8) < 1e-3);
  CHECK(w.certified_lower);
  const WidthEstimate w4 = width_nd(regular_simplex(4, 0.6).generators(), 3000, 2);
  CHECK(std::abs(w4.value - 0.6) < 1e-3);
}

TEST_CASE("width estimate agrees with the exact planar width") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const GeneratorSet X = sample_wide_generator(2, r, 1 + s, 60 + s);
      const WidthEstimate w = width_nd(X, 1500, s);
      CHECK(std::abs(w.value - width_2d(X).value) < 1e-4);
    }
  }
}

TEST_CASE("width estimate lower bound and witness centers") {
  for (int d : {3, 4}) {
    for (std::uint64_t s = 0; s < 15; ++s) {
      const double r = s % 2 ? 0.5 : 1.2;
      const GeneratorSet X = sample_wide_generator(d, r, 1 + s, 90 + s);
      const WidthEstimate w = width_nd(X, 1500, s);
      CHECK(w.value >= r - 1e-3);
      CHECK(w.value <= kPi);
      if (w.witness) {
        // Every lune it reports must contain the body.
        for (const auto& p : sample_dual_boundary(X, {100, 30}, s)) CHECK(w.witness->contains(p, 1e-9));
      }
    }
  }
}

TEST_CASE("Monte-Carlo volume") {
  const VolumeEstimate hemi = mc_volume(GeneratorSet(2, kHalfPi, {UnitVector{0, 0, 1}}), 100000, 1);
  CHECK(std::abs(hemi.mean - kTwoPi) <= 3.0 * hemi.std_error + 1e-12);

  const VolumeEstimate cap = mc_volume(GeneratorSet(2, 0.6, {UnitVector{0, 1, 0}}), 100000, 2);
  CHECK(std::abs(cap.mean - kTwoPi * (1.0 - std::cos(0.6))) <= 3.0 * cap.std_error + 1e-12);

  const VolumeEstimate s3 = mc_volume(regular_simplex(3, kHalfPi).generators(), 1000000, 3);
  CHECK(std::abs(s3.mean - kPi * kPi / 8.0) <= 3.0 * s3.std_error);
  CHECK(s3.n_samples == 1000000);

  // Splitting into streams changes the draws but not the target.
  const VolumeEstimate s3b = mc_volume(regular_simplex(3, kHalfPi).generators(), 1000000, 3, 4);
  CHECK(s3b.n_streams == 4);
  CHECK(std::abs(s3b.mean - kPi * kPi / 8.0) <= 3.0 * s3b.std_error);
  CHECK(mc_volume(regular_simplex(3, kHalfPi).generators(), 50000, 9).mean ==
        mc_volume(regular_simplex(3, kHalfPi).generators(), 50000, 9).mean);

  CHECK_THROWS_AS(mc_volume(regular_simplex(3, 0.5).generators(), 99, 1), InputError);
}

TEST_CASE("Monte-Carlo volume agrees with Gauss-Bonnet on S^2") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const GeneratorSet X = sample_wide_generator(2, 0.7, 4 + s, 80 + s);
    const VolumeEstimate v = mc_volume(X, 200000, s);
    CHECK(std::abs(v.mean - area(boundary_structure(X))) <= 3.5 * v.std_error);
  }
}

TEST_CASE("Schramm bound") {
  const SchrammBound b3 = schramm_bound(3);
  CHECK(b3.reference == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-14));
  CHECK(b3.reference == doctest::Approx(1.2337005501361697).epsilon(1e-14));
  CHECK(b3.bound == doctest::Approx(std::sqrt(512.0 / (2.0 * kPi * 4.0 * 343.0)) * kPi * kPi / 8.0).epsilon(1e-14));
  for (int d = 3; d <= 10; ++d) {
    const SchrammBound b = schramm_bound(d);
    CHECK(b.bound < b.reference);
    CHECK(b.reference == doctest::Approx(geo::sphere_volume(d) / std::pow(2.0, d + 1)).epsilon(1e-13));
    CHECK(b.reference == doctest::Approx(simplex_body_volume_half_pi(d)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(schramm_bound(2), InputError);
}
