// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"
#include "wideball/harness.hpp"
#include "wideball/proof_replay.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace wideball;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const char* title, Outcome& o) {
  std::printf("CRITERION %2d %s: %s;%s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

const Check* find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// Shared corpus: the default planar campaign plus a campaign in d = 3, 4.
struct Corpus {
  CampaignResult planar;
  CampaignResult higher;
  double planar_seconds = 0.0;
  double higher_seconds = 0.0;

  std::vector<const VerificationReport*> all() const {
    std::vector<const VerificationReport*> out;
    for (const auto& r : planar.reports) out.push_back(&r);
    for (const auto& r : higher.reports) out.push_back(&r);
    return out;
  }
};

Corpus build_corpus() {
  Corpus c;
  auto t0 = Clock::now();
  c.planar = run_campaign(CampaignConfig{});
  c.planar_seconds = seconds_since(t0);

  CampaignConfig hi;
  hi.dims = {3, 4};
  hi.instances = 34;
  hi.seed = 20240602;
  t0 = Clock::now();
  c.higher = run_campaign(hi);
  c.higher_seconds = seconds_since(t0);
  return c;
}

void criterion_1() {
  Outcome o;
  const GeneratorSet X = reuleaux_triangle(kHalfPi);
  double a = 0.0;
  std::vector<double> times;
  for (int k = 0; k < 50; ++k) {
    const auto t0 = Clock::now();
    a = area(boundary_structure(X));
    times.push_back(seconds_since(t0));
  }
  std::sort(times.begin(), times.end());
  const double median_ms = 1e3 * times[times.size() / 2];
  o.detail << " area=" << a << " |area-pi/2|=" << std::abs(a - kHalfPi) << " median runtime " << median_ms << " ms";
  o.require(std::abs(a - kHalfPi) <= 1e-9, "area within 1e-9 of pi/2");
  o.require(median_ms < 1.0, "runtime < 1 ms");
  report(1, "exact Reuleaux area at r = pi/2", o);
}

void criterion_2() {
  Outcome o;
  const auto t0 = Clock::now();
  const double radii[] = {0.3, 0.7, kHalfPi};
  int agree = 0;
  double worst_z = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double r = radii[i % 3];
    const GeneratorSet X = sample_wide_generator(2, r, 3 + i % 18, geo::derive_seed(777, i));
    const double a = area(boundary_structure(X));
    const OracleResult mc = oracle_area_mc(X, 1000000, geo::derive_seed(778, i));
    const double z = std::abs(a - mc.value) / (mc.error_bound / 3.0);
    worst_z = std::max(worst_z, z);
    if (std::abs(a - mc.value) <= mc.error_bound) ++agree;
  }
  const double secs = seconds_since(t0);
  o.detail << " " << agree << "/50 within 3 sigma, worst |z|=" << worst_z << ", " << secs << " s";
  o.require(agree == 50, "all 50 within 3 sigma");
  o.require(secs < 120.0, "runtime < 2 min");
  report(2, "Gauss-Bonnet vs Monte-Carlo area", o);
}

void criterion_3(const Corpus& c) {
  Outcome o;
  std::size_t violations = 0, n = 0;
  double worst_margin = 1e300, worst_sentinel = 0.0;
  for (const auto& r : c.planar.reports) {
    ++n;
    const double a = r.metric("area"), a_star = r.metric("reuleaux_area");
    worst_margin = std::min(worst_margin, a - a_star);
    if (a < a_star - 1e-9) ++violations;
    if (r.sentinel) worst_sentinel = std::max(worst_sentinel, std::abs(a - a_star));
  }
  o.detail << " " << n << " instances, " << violations << " violations, min area margin " << worst_margin
           << ", worst sentinel gap " << worst_sentinel << ", campaign " << c.planar_seconds << " s";
  o.require(n == 600, "600 instances");
  o.require(violations == 0, "zero violations");
  o.require(worst_sentinel <= 1e-6, "sentinel equality within 1e-6");
  for (const auto& cell : c.planar.cells) o.require(cell.sentinel_is_min, "sentinel attains the cell minimum");
  report(3, "area(D) >= area(Reuleaux) on the planar campaign", o);
}

void criterion_4(const Corpus& c) {
  Outcome o;
  double worst = 1e300;
  std::size_t grid_fail = 0;
  for (const auto& r : c.planar.reports) {
    worst = std::min(worst, r.metric("width") - r.r);
    const Check* g = find_check(r, "width_oracle_agreement");
    if (g == nullptr || !g->pass) ++grid_fail;
  }
  double reuleaux_gap = 0.0;
  for (double r : {0.3, 0.7, kHalfPi}) reuleaux_gap = std::max(reuleaux_gap, std::abs(width_2d(reuleaux_triangle(r)).value - r));
  o.detail << " min(width - r)=" << worst << ", Reuleaux gap " << reuleaux_gap << ", grid disagreements " << grid_fail;
  o.require(worst >= -1e-6, "width >= r - 1e-6");
  o.require(reuleaux_gap <= 1e-8, "Reuleaux width = r within 1e-8");
  o.require(grid_fail == 0, "grid oracle concurs");
  report(4, "width lower bound", o);
}

void criterion_5(const Corpus& c) {
  Outcome o;
  std::map<int, std::size_t> count;
  double worst = 1e300, sentinel_gap = 0.0;
  for (const auto* r : c.all()) {
    const Inscribed in = inradius_nd(r->generators);
    const double floor = r->r - jung_circumradius(r->d, r->r);
    ++count[r->d];
    worst = std::min(worst, in.radius - floor);
    if (r->sentinel) sentinel_gap = std::max(sentinel_gap, std::abs(in.radius - floor));
  }
  o.detail << " instances d2/d3/d4 = " << count[2] << "/" << count[3] << "/" << count[4] << ", min(inradius - bound)="
           << worst << ", sentinel gap " << sentinel_gap;
  for (int d : {2, 3, 4}) o.require(count[d] >= 100, "100 instances at d=" + std::to_string(d));
  o.require(worst >= -1e-8, "inradius >= r - Jung - 1e-8");
  o.require(sentinel_gap <= 1e-8, "simplex sentinels within 1e-8");
  report(5, "inradius lower bound", o);
}

void criterion_6(const Corpus& c) {
  Outcome o;
  double worst = -1e300;
  std::size_t n = 0;
  for (const auto* r : c.all()) {
    ++n;
    worst = std::max(worst, r->metric("diameter_of_dual_of_dual") - r->r);
  }
  double fixed_gap = 0.0;
  for (double r : {0.3, 0.7, kHalfPi}) fixed_gap = std::max(fixed_gap, std::abs(r_hull(reuleaux_triangle(r), 400, 1).hull_diameter - r));
  o.detail << " " << n << " instances, max(hull diameter - r)=" << worst << ", Reuleaux hull gap " << fixed_gap;
  o.require(worst <= 5e-3, "hull diameter <= r + 5e-3");
  o.require(fixed_gap <= 5e-3, "Reuleaux hull diameter = r within 5e-3");
  report(6, "diameter of the dual of the dual", o);
}

void criterion_7(const Corpus& c) {
  Outcome o;
  double worst = 1e300;
  for (const auto* r : c.all()) {
    const double w = r->d == 2 ? r->metric("width_estimate") : r->metric("width");
    worst = std::min(worst, w + r->metric("diameter_of_dual_of_dual") + 1e-2 - 2.0 * r->r);
  }
  o.detail << " min(width + hull diameter + 1e-2 - 2r)=" << worst;
  o.require(worst >= 0.0, "2r <= width + diameter + 1e-2");
  report(7, "width-diameter inequality", o);
}

void criterion_8() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int d = 3; d <= 10; ++d) {
    const SchrammBound s = schramm_bound(d);
    o.require(s.bound < s.reference, "bound < reference at d=" + std::to_string(d));
    if (d == 3) o.detail << " d=3 bound " << s.bound << " reference " << s.reference << ";";
  }
  const VolumeEstimate v = mc_volume(regular_simplex(3, kHalfPi).generators(), 10000000, 20240603);
  const double target = kPi * kPi / 8.0;
  const double secs = seconds_since(t0);
  o.detail << " mc volume " << v.mean << " +- " << v.std_error << " vs " << target << " (z=" << (v.mean - target) / v.std_error
           << "), " << secs << " s";
  o.require(std::abs(v.mean - target) <= 3.0 * v.std_error, "Monte-Carlo within 3 sigma of pi^2/8");
  o.require(secs < 180.0, "runtime < 3 min");
  report(8, "Schramm bound and simplex volume", o);
}

void criterion_9(const Corpus& c) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t triangles = 0, failed = 0;
  double worst_link = 1e300, worst_apex = 1e300;
  const char* required[] = {"body_vs_cap_domain", "cap_domain_vs_symmetric", "symmetric_vs_reuleaux", "apex_distance",
                            "caps_disjoint", "cap_domain_inside_body"};
  for (const auto& r : c.planar.reports) {
    if (r.branch != "triangle_contact") continue;
    ++triangles;
    ReplayOptions opts;
    opts.seed = r.seed;
    const ReplayTrace t = replay_proof(r.generators, opts);
    bool ok = t.branch == "triangle_contact";
    for (const char* name : required) {
      const auto it = std::find_if(t.checks.begin(), t.checks.end(), [&](const ReplayCheck& k) { return k.name == name; });
      ok = ok && it != t.checks.end() && it->pass;
    }
    worst_link = std::min({worst_link, t.area_body - t.area_cap_domain, t.area_cap_domain - t.area_symmetric,
                           t.area_symmetric - t.area_reuleaux});
    for (const auto& q : t.apexes) worst_apex = std::min(worst_apex, spherical_distance(q, t.center) - (t.radius - t.inradius));
    if (!ok) ++failed;
  }
  bool arms = true;
  for (double r : {0.3, 0.7, kHalfPi}) arms = arms && cauchy_arm_profile(r, 100).strictly_increasing;
  o.detail << " " << triangles << " triangle-contact instances, " << failed << " with a failed step, min chain link "
           << worst_link << ", min apex margin " << worst_apex << ", arm profiles " << (arms ? "increasing" : "NOT increasing")
           << ", " << seconds_since(t0) << " s";
  o.require(triangles > 0, "some triangle-contact instances");
  o.require(failed == 0, "every step passes");
  o.require(worst_link >= -1e-9, "each link within 1e-9");
  o.require(worst_apex >= -1e-9, "apex distance >= r - R_in - 1e-9");
  o.require(arms, "arm profiles strictly increasing");
  report(9, "proof replay", o);
}

void criterion_10() {
  Outcome o;
  CampaignConfig cfg;
  cfg.dims = {2, 3};
  cfg.instances = 12;
  cfg.seed = 424242;
  const std::string a = reports_to_jsonl(run_campaign(cfg).reports, false);
  const std::string b = reports_to_jsonl(run_campaign(cfg).reports, false);
  cfg.threads = 2;
  const std::string c = reports_to_jsonl(run_campaign(cfg).reports, false);
  o.detail << " " << a.size() << " bytes of JSONL, repeat identical: " << (a == b ? "yes" : "no")
           << ", two threads identical: " << (a == c ? "yes" : "no");
  o.require(a == b, "byte-identical repeat");
  o.require(a == c, "byte-identical with two threads");
  report(10, "campaign determinism", o);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  const Corpus corpus = build_corpus();
  criterion_3(corpus);
  criterion_4(corpus);
  criterion_5(corpus);
  criterion_6(corpus);
  criterion_7(corpus);
  criterion_8();
  criterion_9(corpus);
  criterion_10();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
