#include "wideball/proof_replay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wideball {

namespace {

using geo::angle_about;
using geo::cross;
using geo::rotate_about;

double det3(const Vec& a, const Vec& b, const Vec& c) { return cross(a, b).dot(c); }

bool in_body(const Vec& y, const GeneratorSet& X, double tol) {
  const double limit = std::cos(X.radius() + tol);
  for (const auto& x : X.points()) {
    if (y.dot(x.coords()) < limit) return false;
  }
  return true;
}

// Cap with apex q outside the incircle B[c, rin]; both tangent circles have radius r.
Cap make_cap(const Vec& c, double rin, double r, const Vec& q) {
  const auto zs = geo::circle_intersections(c, r - rin, q, r);
  if (zs.size() != 2) throw VerificationFailure("no radius-r circle through the apex is tangent to the incircle");
  int first = -1, second = -1;
  std::array<Vec, 2> ts;
  for (int k = 0; k < 2; ++k) {
    ts[k] = geo::walk(c, -geo::tangent_toward(c, zs[k]), rin);
    if (angle_about(zs[k], q, ts[k]) < kPi) first = k; else second = k;
  }
  if (first < 0 || second < 0) throw VerificationFailure("cap tangent arcs are degenerate");
  Cap cap{UnitVector(q),
          {UnitVector(zs[first]), UnitVector(zs[second])},
          {UnitVector(ts[first]), UnitVector(ts[second])},
          0.0};
  const BallSpec incircle(UnitVector(c), rin);
  cap.area = arc_path_area(cap.outline(incircle, r)) - geo::cap_volume(2, rin);
  return cap;
}

Vec sample_in_cap(geo::CapSampler& s, Rng& rng) {
  Vec y;
  s.sample(rng, y);
  return y;
}

ReplayCheck check_ge(std::string name, double lhs, double rhs, double tol, std::string detail = {}) {
  return {std::move(name), lhs >= rhs - tol, lhs, rhs, std::move(detail)};
}

}  // namespace

const char* to_string(ContactKind kind) {
  return kind == ContactKind::DiameterContact ? "diameter_contact" : "triangle_contact";
}

bool Cap::contains(const Vec& y, const BallSpec& incircle, double r, double tol) const {
  const Vec& c = incircle.center().coords();
  if (geo::dist(y, arc_centers[0].coords()) > r + tol) return false;
  if (geo::dist(y, arc_centers[1].coords()) > r + tol) return false;
  if (geo::dist(y, c) < incircle.radius() - tol) return false;
  // Angular sector at c running counterclockwise from tangency[1] to tangency[0].
  const double a1 = angle_about(c, tangency[1].coords(), tangency[0].coords());
  double ay = angle_about(c, tangency[1].coords(), y);
  if (tol > 0.0 && ay > kTwoPi - tol) ay -= kTwoPi;
  return ay >= -tol && ay <= a1 + tol;
}

std::vector<CircularArc> Cap::outline(const BallSpec& incircle, double r) const {
  const Vec& c = incircle.center().coords();
  const Vec& q = apex.coords();
  const Vec& z1 = arc_centers[0].coords();
  const Vec& z2 = arc_centers[1].coords();
  const Vec& t1 = tangency[0].coords();
  const Vec& t2 = tangency[1].coords();
  return {
      {z1, r, q, t1, angle_about(z1, q, t1)},
      {c, incircle.radius(), t1, t2, angle_about(c, t1, t2)},
      {z2, r, t2, q, angle_about(z2, t2, q)},
  };
}

double CapDomain::area() const {
  double a = geo::cap_volume(2, incircle.radius());
  for (const auto& cap : caps) a += cap.area;
  return a;
}

bool CapDomain::contains(const Vec& y, double tol) const {
  if (geo::dist(y, incircle.center().coords()) <= incircle.radius() + tol) return true;
  for (const auto& cap : caps) {
    if (cap.contains(y, incircle, radius, tol)) return true;
  }
  return false;
}

ContactReport classify_contact_report(const GeneratorSet& X, double tol) {
  if (X.dim() != 2) throw InputError("contact classification needs generators on S^2");
  const double r = X.radius();
  const Circumball cb = circumradius_minimax(X.points());
  const Vec& c = cb.center.coords();
  const double rin = r - cb.radius;

  ContactReport rep{ContactKind::DiameterContact, cb.center, rin, {}, {}, {}, 2.0 * rin > r + tol};

  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const Vec& x = X[i].coords();
    if (geo::dist(c, x) < cb.radius - 1e-7) continue;
    const Vec dir = -geo::tangent_toward(c, x);
    bool dup = false;
    for (const auto& d : dirs) {
      if (geo::dist(d, dir) < 1e-5) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    dirs.push_back(dir);
    rep.contacts.emplace_back(geo::walk(c, dir, rin));
    rep.contact_generators.push_back(i);
  }
  if (rep.early_exit) return rep;

  if (rep.contacts.size() < 2) {
    std::ostringstream os;
    os << "incircle touches the boundary at " << rep.contacts.size()
       << " point(s); inradius " << rin << ", circumradius " << cb.radius;
    throw StructuralError(os.str());
  }

  const std::size_t n = rep.contacts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (geo::dist(rep.contacts[i].coords(), rep.contacts[j].coords()) >= 2.0 * rin - tol) {
        rep.kind = ContactKind::DiameterContact;
        rep.selected = {i, j};
        return rep;
      }
    }
  }

  // Triple whose spherical triangle holds c, with the largest margin.
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec& a = rep.contacts[i].coords();
        const Vec& b = rep.contacts[j].coords();
        const Vec& e = rep.contacts[k].coords();
        double s1 = det3(a, b, c), s2 = det3(b, e, c), s3 = det3(e, a, c);
        if (s1 < 0.0) {
          s1 = -s1;
          s2 = -s2;
          s3 = -s3;
        }
        const double margin = std::min({s1, s2, s3});
        if (margin > best) {
          best = margin;
          rep.selected = {i, j, k};
        }
      }
    }
  }
  if (rep.selected.size() != 3) {
    std::ostringstream os;
    os << "no antipodal pair and no triple of the " << n << " contacts surrounds the incenter";
    throw StructuralError(os.str());
  }
  rep.kind = ContactKind::TriangleContact;
  // Counterclockwise order around c keeps the caps in boundary order.
  const Vec ref = rep.contacts[rep.selected[0]].coords();
  std::sort(rep.selected.begin(), rep.selected.end(), [&](std::size_t a, std::size_t b) {
    return angle_about(c, ref, rep.contacts[a].coords()) < angle_about(c, ref, rep.contacts[b].coords());
  });
  return rep;
}

ContactKind classify_contact(const GeneratorSet& X, double tol) {
  const ContactReport rep = classify_contact_report(X, tol);
  if (rep.early_exit) {
    std::ostringstream os;
    os << "2 * inradius = " << 2.0 * rep.inradius << " is not below r = " << X.radius();
    throw PreconditionError(os.str());
  }
  return rep.kind;
}

CapDomain build_cap_domain(const GeneratorSet& X, double tol) {
  return build_cap_domain(X, classify_contact_report(X, tol));
}

CapDomain build_cap_domain(const GeneratorSet& X, const ContactReport& contact) {
  if (contact.early_exit || contact.kind != ContactKind::TriangleContact) {
    throw PreconditionError("cap domain needs a triangle contact");
  }
  const double r = X.radius();
  const double rin = contact.inradius;
  const Vec& c = contact.center.coords();
  const BallSpec incircle(contact.center, rin);
  CapDomain dom{incircle, {}, "C", r};

  for (std::size_t idx : contact.selected) {
    const Vec& a = contact.contacts[idx].coords();
    const Vec tau = geo::tangent_toward(a, c);
    // Foot point at distance r from a across the supporting line, and the great
    // circle through it perpendicular to that segment.
    const Vec p = geo::walk(a, tau, r);
    const Vec pole = -std::sin(r) * a + std::cos(r) * tau;
    const Vec w = cross(pole, p).normalized();
    if (!in_body(p, X, kGeoTol)) {
      throw VerificationFailure("perpendicular line misses the body: no point of the body on it");
    }
    Vec q = p;
    double q_dist = geo::dist(p, c);
    for (double sgn : {1.0, -1.0}) {
      double lo = 0.0, hi = kPi - 1e-9;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (in_body(geo::walk(p, sgn * w, mid), X, 0.0)) lo = mid; else hi = mid;
      }
      const Vec e = geo::walk(p, sgn * w, lo);
      const double de = geo::dist(e, c);
      if (de > q_dist) {
        q = e;
        q_dist = de;
      }
    }
    dom.caps.push_back(make_cap(c, rin, r, q));
  }
  return dom;
}

CapDomain build_symmetric_cap_domain(double inradius, double r) {
  if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("symmetric cap domain: r must lie in (0, pi/2]");
  const double rin_min = r - jung_circumradius(2, r);
  if (inradius < rin_min - 1e-10 || !(inradius < 0.5 * r)) {
    std::ostringstream os;
    os << "symmetric cap domain: inradius " << inradius << " outside [" << rin_min << ", " << 0.5 * r << ")";
    throw InputError(os.str());
  }
  const Vec c = Vec::Unit(3, 2);
  const GeneratorSet tri = reuleaux_triangle(r);
  CapDomain dom{BallSpec(UnitVector(c), inradius), {}, "C*", r};
  for (const auto& b : tri.points()) {
    const Vec apex = geo::walk(c, geo::tangent_toward(c, b.coords()), r - inradius);
    dom.caps.push_back(make_cap(c, inradius, r, apex));
  }
  return dom;
}

ArmProfile cauchy_arm_profile(double r, std::size_t samples, double inradius) {
  if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("arm profile: r must lie in (0, pi/2]");
  if (samples < 2) throw InputError("arm profile needs at least 2 samples");
  const double rin_star = r - jung_circumradius(2, r);
  if (inradius < 0.0) inradius = 0.5 * (rin_star + 0.5 * r);
  if (!(inradius > rin_star) || !(inradius < 0.5 * r)) {
    throw InputError("arm profile: inradius must lie strictly between the Reuleaux inradius and r/2");
  }

  const Vec c = Vec::Unit(3, 2);
  const GeneratorSet tri = reuleaux_triangle(r);
  const Vec& b1 = tri[0].coords();
  const Vec& b3 = tri[2].coords();
  const Vec c1 = geo::walk(c, geo::tangent_toward(c, b1), r - inradius);
  // Midpoint of the boundary arc b1 b2 (carried by b3), and the incircle point
  // opposite b3.
  const Vec b12 = geo::walk(b3, geo::tangent_toward(b3, c), r);
  const Vec b3s = geo::walk(c, -geo::tangent_toward(c, b3), inradius);

  Vec cp;
  bool found = false;
  for (const Vec& z : geo::circle_intersections(c1, r, b3s, r)) {
    if (geo::dist(z, b3) < r && geo::dist(z, b1) > r) {
      cp = z;
      found = true;
      break;
    }
  }
  if (!found) throw StructuralError("arm profile: no radius-r circle through c1 and b3* separates b3 from b1");

  const double span = angle_about(b3, b1, b12);
  Vec f;
  found = false;
  for (const Vec& y : geo::circle_intersections(b3, r, cp, r)) {
    const double a = angle_about(b3, b1, y);
    const bool on_arc = span < kPi ? a <= span + 1e-12 : (a >= span - 1e-12 || a < 1e-12);
    if (on_arc) {
      f = y;
      found = true;
      break;
    }
  }
  if (!found) throw StructuralError("arm profile: circles around b3 and c' do not cross on the arc b1 b12");

  const Vec v = geo::walk(cp, -geo::tangent_toward(cp, b3), r);
  double sweep = angle_about(cp, f, v);
  if (sweep > kPi) sweep -= kTwoPi;

  ArmProfile out{r, inradius, {}, true, 0.0};
  out.samples.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(samples - 1);
    const Vec x = rotate_about(cp, f, t * sweep);
    const double clearance = geo::dist(b3, x) - r;
    const Vec y = geo::walk(b3, geo::tangent_toward(b3, x), r);
    const double direct = geo::dist(x, y);
    out.samples.push_back({t * std::abs(sweep) * std::sin(r), clearance, direct});
    out.max_identity_gap = std::max(out.max_identity_gap, std::abs(clearance - direct));
    if (k > 0 && !(clearance > out.samples[k - 1].clearance)) out.strictly_increasing = false;
  }
  return out;
}

ReplayTrace replay_proof(const GeneratorSet& X, const ReplayOptions& opts) {
  const double r = X.radius();
  const double tol = opts.tol;
  const ArcBoundary boundary = boundary_structure(X);
  const ContactReport rep = classify_contact_report(X, tol);
  const double area_d = area(boundary);
  const double area_star = area(boundary_structure(reuleaux_triangle(r)));
  const double rin_star = r - jung_circumradius(2, r);

  ReplayTrace tr{r, "", rep.inradius, rep.center, rep.contacts, {}, area_d, 0.0, 0.0, area_star, 0.0, 0.0, {}, true};
  tr.checks.push_back(check_ge("inradius_lower_bound", rep.inradius, rin_star, tol));

  if (rep.early_exit || rep.kind == ContactKind::DiameterContact) {
    tr.branch = rep.early_exit ? "early_exit" : "diameter_contact";
    const double half_disk = geo::cap_volume(2, 0.5 * r);
    tr.checks.push_back(check_ge("incircle_has_diameter_r", 2.0 * rep.inradius, r, tol));
    tr.checks.push_back(check_ge("body_vs_diameter_disk", area_d, half_disk, tol));
    tr.checks.push_back(check_ge("isodiametric_reuleaux", half_disk, area_star, tol));
  } else {
    tr.branch = "triangle_contact";
    const CapDomain dom = build_cap_domain(X, rep);
    const Vec& c = rep.center.coords();
    tr.area_cap_domain = dom.area();
    double reach = rep.inradius;
    for (const auto& cap : dom.caps) {
      tr.apexes.push_back(cap.apex);
      const double dq = geo::dist(cap.apex.coords(), c);
      reach = std::max(reach, dq);
      tr.checks.push_back(check_ge("apex_distance", dq, r - rep.inradius, tol));
      tr.checks.push_back(check_ge("apex_outside_incircle", dq, rep.inradius, tol));
    }
    tr.checks.push_back(check_ge("body_vs_cap_domain", area_d, tr.area_cap_domain, tol));

    Rng rng(geo::derive_seed(opts.seed, 11));
    geo::CapSampler around(c, std::min(reach + 1e-9, kHalfPi));
    std::size_t accepted = 0, outside = 0;
    for (std::size_t it = 0; it < 200 * opts.inclusion_samples && accepted < opts.inclusion_samples; ++it) {
      const Vec y = sample_in_cap(around, rng);
      if (!dom.contains(y, 0.0)) continue;
      ++accepted;
      if (!in_body(y, X, tol)) ++outside;
    }
    {
      std::ostringstream os;
      os << accepted << " sampled points of the cap domain, " << outside << " outside the body";
      tr.checks.push_back({"cap_domain_inside_body", outside == 0 && accepted > 0, 0.0, static_cast<double>(outside), os.str()});
    }

    auto overlap_count = [&](const CapDomain& d, geo::CapSampler& s) {
      std::size_t hits = 0;
      for (std::size_t it = 0; it < opts.overlap_samples; ++it) {
        const Vec y = sample_in_cap(s, rng);
        int inside = 0;
        for (const auto& cap : d.caps) inside += cap.contains(y, d.incircle, r, -tol) ? 1 : 0;
        if (inside > 1) ++hits;
      }
      return hits;
    };
    const std::size_t ov = overlap_count(dom, around);
    tr.checks.push_back({"caps_disjoint", ov == 0, 0.0, static_cast<double>(ov), "sampled points in two caps"});

    if (rep.inradius >= rin_star - 1e-10 && rep.inradius < 0.5 * r) {
      const CapDomain sym = build_symmetric_cap_domain(std::max(rep.inradius, rin_star), r);
      tr.area_symmetric = sym.area();
      tr.checks.push_back(check_ge("cap_domain_vs_symmetric", tr.area_cap_domain, tr.area_symmetric, tol));
      tr.checks.push_back(check_ge("symmetric_vs_reuleaux", tr.area_symmetric, area_star, tol));

      geo::CapSampler outer(sym.incircle.center().coords(), jung_circumradius(2, r) + 1e-9);
      const std::size_t ovs = overlap_count(sym, outer);
      tr.checks.push_back({"symmetric_caps_disjoint", ovs == 0, 0.0, static_cast<double>(ovs), "sampled points in two caps"});

      // Both differences live inside the Reuleaux circumcap.
      const GeneratorSet tri = reuleaux_triangle(r);
      std::size_t only_star = 0, only_sym = 0;
      for (std::size_t it = 0; it < opts.overlap_samples; ++it) {
        const Vec y = sample_in_cap(outer, rng);
        const bool in_star = in_body(y, tri, 0.0);
        const bool in_sym = sym.contains(y, 0.0);
        if (in_star && !in_sym) ++only_star;
        if (in_sym && !in_star) ++only_sym;
      }
      const double n = static_cast<double>(opts.overlap_samples);
      const double vol = outer.volume();
      tr.area_reuleaux_minus_symmetric = vol * only_star / n;
      tr.area_symmetric_minus_reuleaux = tr.area_reuleaux_minus_symmetric + tr.area_symmetric - area_star;
      const double mc_sym = vol * only_sym / n;
      const double p = (only_star + only_sym) / n;
      const double sigma = vol * std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
      tr.checks.push_back(check_ge("dissection_balance", tr.area_symmetric_minus_reuleaux / 6.0,
                                   tr.area_reuleaux_minus_symmetric / 6.0, tol));
      {
        std::ostringstream os;
        os << "sampled " << mc_sym << " vs identity " << tr.area_symmetric_minus_reuleaux;
        const double gap = std::abs(mc_sym - tr.area_symmetric_minus_reuleaux);
        tr.checks.push_back({"dissection_identity", gap <= 5.0 * sigma + tol, 5.0 * sigma + tol, gap, os.str()});
      }

      if (rep.inradius > rin_star + 1e-9) {
        const ArmProfile arm = cauchy_arm_profile(r, opts.arm_samples, rep.inradius);
        double step = std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < arm.samples.size(); ++k) {
          step = std::min(step, arm.samples[k].clearance - arm.samples[k - 1].clearance);
        }
        tr.checks.push_back({"arm_monotone", arm.strictly_increasing, step, 0.0, "smallest clearance increment along the arc f -> v"});
        tr.checks.push_back({"arm_clearance_identity", arm.max_identity_gap <= 1e-12, 1e-12, arm.max_identity_gap, ""});
        tr.checks.push_back(check_ge("arm_start_clearance", arm.samples.front().clearance, 0.0, kAlgTol));
      }
    } else {
      tr.checks.push_back({"symmetric_domain_defined", false, rep.inradius, rin_star, "inradius outside the admissible range"});
    }
  }
  tr.checks.push_back(check_ge("body_vs_reuleaux", area_d, area_star, tol));
  for (const auto& ch : tr.checks) tr.all_pass = tr.all_pass && ch.pass;
  return tr;
}

}  // namespace wideball
