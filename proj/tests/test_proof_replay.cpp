#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wideball/disk_polygon.hpp"
#include "wideball/proof_replay.hpp"

#include <cmath>

using namespace wideball;

namespace {

double reuleaux_inradius(double r) { return r - jung_circumradius(2, r); }

// Random instances that reach the triangle branch.
std::vector<GeneratorSet> triangle_instances(double r, std::size_t want, std::uint64_t seed0) {
  std::vector<GeneratorSet> out;
  for (std::uint64_t s = seed0; out.size() < want && s < seed0 + 2000; ++s) {
    const GeneratorSet X = sample_wide_generator(2, r, 3 + s % 15, s);
    const ContactReport rep = classify_contact_report(X);
    if (!rep.early_exit && rep.kind == ContactKind::TriangleContact) out.push_back(X);
  }
  return out;
}

Mat rotation(std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> n;
  Mat A(3, 3);
  for (int i = 0; i < 9; ++i) A(i / 3, i % 3) = n(rng);
  Eigen::HouseholderQR<Mat> qr(A);
  Mat Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace

TEST_CASE("lens has antipodal contacts") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const GeneratorSet X(2, r, {UnitVector{0, 0, 1}, UnitVector{std::sin(r), 0, std::cos(r)}});
    CHECK(classify_contact(X) == ContactKind::DiameterContact);
    const ContactReport rep = classify_contact_report(X);
    REQUIRE(rep.selected.size() == 2);
    const Vec a = rep.contacts[rep.selected[0]].coords();
    const Vec b = rep.contacts[rep.selected[1]].coords();
    CHECK(geo::dist(a, b) == doctest::Approx(2.0 * rep.inradius).epsilon(1e-7));
  }
}

TEST_CASE("Reuleaux triangle touches its incircle at the arc midpoints") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const GeneratorSet X = reuleaux_triangle(r);
    CHECK(classify_contact(X) == ContactKind::TriangleContact);
    const ContactReport rep = classify_contact_report(X);
    CHECK(rep.contacts.size() == 3);
    CHECK(rep.inradius == doctest::Approx(reuleaux_inradius(r)).epsilon(1e-10));
    for (const auto& a : rep.contacts) {
      // Midpoint of the arc about b: on the ray from b through the center, at distance r.
      bool found = false;
      for (const auto& b : X.points()) {
        const Vec m = geo::walk(b.coords(), geo::tangent_toward(b.coords(), rep.center.coords()), r);
        found = found || geo::dist(m, a.coords()) < 1e-6;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("fat domains take the early exit") {
  const GeneratorSet X(2, 0.7, {UnitVector{0, 0, 1}});
  const ContactReport rep = classify_contact_report(X);
  CHECK(rep.early_exit);
  CHECK_THROWS_AS(classify_contact(X), PreconditionError);
  CHECK_THROWS_AS(build_cap_domain(X), PreconditionError);
}

TEST_CASE("classification is rotation invariant") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    std::uint64_t k = 0;
    for (const auto& X : triangle_instances(r, 8, 100)) {
      std::vector<UnitVector> pts;
      const Mat Q = rotation(++k);
      for (const auto& p : X.points()) pts.emplace_back(Vec(Q * p.coords()));
      const GeneratorSet Y(2, r, pts);
      CHECK(classify_contact(Y) == classify_contact(X));
      CHECK(classify_contact_report(Y).inradius == doctest::Approx(classify_contact_report(X).inradius).epsilon(1e-10));
    }
  }
}

TEST_CASE("cap domain of the Reuleaux triangle is the triangle") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const GeneratorSet X = reuleaux_triangle(r);
    const CapDomain C = build_cap_domain(X);
    CHECK(C.kind == "C");
    REQUIRE(C.caps.size() == 3);
    for (const auto& cap : C.caps) {
      double best = kPi;
      for (const auto& b : X.points()) best = std::min(best, spherical_distance(cap.apex, b));
      CHECK(best < 1e-6);
    }
    CHECK(std::abs(C.area() - area(boundary_structure(X))) < 1e-6);
  }
}

TEST_CASE("cap area agrees with Monte Carlo") {
  const auto inst = triangle_instances(0.7, 3, 10);
  REQUIRE(inst.size() == 3);
  for (const auto& X : inst) {
    const CapDomain C = build_cap_domain(X);
    for (const auto& cap : C.caps) {
      // Sample the radius-r disk about the cap's first arc center, which holds the cap.
      geo::CapSampler sampler(cap.arc_centers[0].coords(), 0.7);
      Rng rng(3);
      Vec y;
      const std::size_t n = 200000;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sampler.sample(rng, y);
        hits += cap.contains(y, C.incircle, 0.7, 0.0) ? 1 : 0;
      }
      const double p = static_cast<double>(hits) / n;
      const double est = sampler.volume() * p;
      const double se = sampler.volume() * std::sqrt(std::max(p * (1 - p), 1.0 / n) / n);
      CHECK(std::abs(est - cap.area) <= 3.5 * se);
    }
  }
}

TEST_CASE("cap domains of random instances") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    for (const auto& X : triangle_instances(r, 10, 300)) {
      const ContactReport rep = classify_contact_report(X);
      const CapDomain C = build_cap_domain(X, rep);
      REQUIRE(C.caps.size() == 3);
      // Apex distance from the center is at least r - R_in.
      for (const auto& cap : C.caps) {
        CHECK(spherical_distance(cap.apex, rep.center) >= r - rep.inradius - 1e-9);
        CHECK(dual_membership(cap.apex, X, 1e-9));
      }
      // C inside D: 5000 samples of C, none outside D.
      geo::CapSampler sampler(rep.center.coords(), r);
      Rng rng(7);
      Vec y;
      std::size_t seen = 0, outside = 0;
      for (int i = 0; i < 200000 && seen < 5000; ++i) {
        sampler.sample(rng, y);
        if (!C.contains(y, 0.0)) continue;
        ++seen;
        outside += dual_membership(UnitVector(y), X, 1e-9) ? 0 : 1;
      }
      CHECK(seen == 5000);
      CHECK(outside == 0);
      CHECK(area(boundary_structure(X)) >= C.area() - 1e-9);
    }
  }
}

TEST_CASE("caps never overlap") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    for (const auto& X : triangle_instances(r, 6, 700)) {
      const CapDomain C = build_cap_domain(X);
      geo::CapSampler sampler(C.incircle.center().coords(), r);
      Rng rng(11);
      Vec y;
      for (int i = 0; i < 40000; ++i) {
        sampler.sample(rng, y);
        int in = 0;
        for (const auto& cap : C.caps) in += cap.contains(y, C.incircle, r, -1e-9) ? 1 : 0;
        CHECK(in <= 1);
      }
    }
  }
}

TEST_CASE("symmetric cap domain") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const double lo = reuleaux_inradius(r);
    const CapDomain at_min = build_symmetric_cap_domain(lo, r);
    CHECK(at_min.kind == "C*");
    REQUIRE(at_min.caps.size() == 3);
    const double a_star = area(boundary_structure(reuleaux_triangle(r)));
    CHECK(at_min.area() == doctest::Approx(a_star).epsilon(1e-9));
    for (const auto& cap : at_min.caps) {
      CHECK(spherical_distance(cap.apex, at_min.incircle.center()) == doctest::Approx(r - lo).epsilon(1e-10));
    }
    // Apexes at pairwise distance r: the Reuleaux vertices.
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(spherical_distance(at_min.caps[i].apex, at_min.caps[(i + 1) % 3].apex) == doctest::Approx(r).epsilon(1e-9));
    }
    for (int k = 0; k <= 20; ++k) {
      const double rin = lo + (0.5 * r - lo) * k / 20.5;
      CHECK(build_symmetric_cap_domain(rin, r).area() >= a_star - 1e-9);
    }
    CHECK_THROWS_AS(build_symmetric_cap_domain(lo - 1e-3, r), InputError);
    CHECK_THROWS_AS(build_symmetric_cap_domain(0.5 * r, r), InputError);
  }
}

TEST_CASE("instance cap domain dominates the symmetric one") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    for (const auto& X : triangle_instances(r, 10, 900)) {
      const ContactReport rep = classify_contact_report(X);
      const CapDomain C = build_cap_domain(X, rep);
      const CapDomain S = build_symmetric_cap_domain(rep.inradius, r);
      CHECK(C.area() >= S.area() - 1e-9);
    }
  }
}

TEST_CASE("Cauchy arm clearance increases") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const ArmProfile p = cauchy_arm_profile(r, 100);
    REQUIRE(p.samples.size() == 100);
    CHECK(p.strictly_increasing);
    CHECK(p.samples.front().clearance >= -1e-12);
    for (std::size_t i = 1; i < p.samples.size(); ++i) {
      CHECK(p.samples[i].arc_position > p.samples[i - 1].arc_position);
      CHECK(p.samples[i].clearance > p.samples[i - 1].clearance);
    }
    for (const auto& s : p.samples) CHECK(std::abs(s.clearance - s.clearance_direct) <= 1e-12);
    CHECK(p.max_identity_gap <= 1e-12);
  }
  CHECK_THROWS_AS(cauchy_arm_profile(0.7, 1), InputError);
}

TEST_CASE("replay on the Reuleaux triangle is tight") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    const ReplayTrace t = replay_proof(reuleaux_triangle(r));
    CHECK(t.branch == "triangle_contact");
    CHECK(t.all_pass);
    CHECK(std::abs(t.area_body - t.area_cap_domain) < 1e-6);
    CHECK(std::abs(t.area_cap_domain - t.area_symmetric) < 1e-6);
    CHECK(std::abs(t.area_symmetric - t.area_reuleaux) < 1e-6);
  }
}

TEST_CASE("replay passes on random instances") {
  for (double r : {0.3, 0.7, kHalfPi}) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      ReplayOptions o;
      o.inclusion_samples = 1500;
      o.overlap_samples = 3000;
      o.seed = s;
      const ReplayTrace t = replay_proof(sample_wide_generator(2, r, 1 + s, 4000 + s), o);
      CHECK(t.all_pass);
      for (const auto& c : t.checks) {
        INFO(c.name << " " << c.lhs << " " << c.rhs << " " << c.detail);
        CHECK(c.pass);
      }
      if (t.branch == "triangle_contact") {
        CHECK(t.area_body >= t.area_cap_domain - 1e-9);
        CHECK(t.area_cap_domain >= t.area_symmetric - 1e-9);
        CHECK(t.area_symmetric >= t.area_reuleaux - 1e-9);
        CHECK(t.apexes.size() == 3);
      }
    }
  }
}
