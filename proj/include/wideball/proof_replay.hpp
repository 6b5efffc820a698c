#pragma once

// Instance-by-instance reconstruction of the cap-domain argument on S^2 for
// area(B[X, r]) >= area(Reuleaux triangle of width r).

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"
#include "wideball/sphere_core.hpp"

#include <array>
#include <string>
#include <vector>

namespace wideball {

enum class ContactKind { DiameterContact, TriangleContact };

const char* to_string(ContactKind kind);

struct ContactReport {
  ContactKind kind;
  /// Inscribed circle B[center, inradius].
  UnitVector center;
  double inradius;
  /// Points where the inscribed circle touches the boundary, after merging.
  std::vector<UnitVector> contacts;
  /// Generator whose circle touches the incircle at each contact.
  std::vector<std::size_t> contact_generators;
  /// Indices into `contacts`: the antipodal pair, or the triple around the center.
  std::vector<std::size_t> selected;
  /// 2 inradius >= r: the isodiametric shortcut applies before any case split.
  bool early_exit;
};

/// Region between the incircle and two radius-r arcs through `apex`, each tangent
/// to the incircle from outside the incircle (their disks contain it).
struct Cap {
  UnitVector apex;
  /// Centers of the two tangent radius-r circles.
  std::array<UnitVector, 2> arc_centers;
  /// Tangency points on the incircle; arc_centers[k] carries the arc apex -> tangency[k].
  std::array<UnitVector, 2> tangency;
  /// Area of the cap itself (incircle excluded).
  double area;

  /// Membership in the closed cap, tol > 0 widens, tol < 0 shrinks.
  bool contains(const Vec& y, const BallSpec& incircle, double r, double tol = kGeoTol) const;
  /// Counterclockwise boundary of cap united with the incircle.
  std::vector<CircularArc> outline(const BallSpec& incircle, double r) const;
};

struct CapDomain {
  BallSpec incircle;
  std::vector<Cap> caps;
  /// "C" for an instance, "C*" for the symmetric comparison domain.
  std::string kind;
  double radius;

  double area() const;
  bool contains(const Vec& y, double tol = kGeoTol) const;
};

/// Classifies how the incircle touches the boundary. Throws PreconditionError when
/// 2 inradius > r + tol (use ContactReport via `classify_contact_report` to get the
/// early-exit flag instead), StructuralError with diagnostics when fewer than two
/// contacts are found or no valid pair/triple exists.
ContactKind classify_contact(const GeneratorSet& X, double tol = kGeoTol);
ContactReport classify_contact_report(const GeneratorSet& X, double tol = kGeoTol);

/// Cap domain of an instance. Throws PreconditionError unless the contact is a
/// triangle, VerificationFailure when a cap apex cannot be found.
CapDomain build_cap_domain(const GeneratorSet& X, double tol = kGeoTol);
CapDomain build_cap_domain(const GeneratorSet& X, const ContactReport& contact);

/// Threefold-symmetric cap domain about the north pole with apexes at distance
/// r - inradius along the Reuleaux axes. Throws InputError unless
/// r - jung_circumradius(2, r) <= inradius < r/2 (small tolerance on the left).
CapDomain build_symmetric_cap_domain(double inradius, double r);

struct ArmSample {
  /// Arc length from the start point f along the radius-r arc.
  double arc_position;
  /// dist(b3, x) - r
  double clearance;
  /// dist(x, y) with y the point of B[b3, r] closest to x.
  double clearance_direct;
};

struct ArmProfile {
  double radius;
  double inradius;
  std::vector<ArmSample> samples;
  bool strictly_increasing;
  /// max |clearance - clearance_direct|
  double max_identity_gap;
};

/// Clearance profile of the moving point x along the arc from f to v in the
/// comparison configuration around a Reuleaux triangle. `inradius` defaults to the
/// midpoint of the admissible range; `samples` >= 2.
ArmProfile cauchy_arm_profile(double r, std::size_t samples, double inradius = -1.0);

/// One inequality of the argument, read as lhs >= rhs.
struct ReplayCheck {
  std::string name;
  bool pass;
  double lhs;
  double rhs;
  std::string detail;
};

struct ReplayTrace {
  double radius;
  std::string branch;  // "early_exit", "diameter_contact", "triangle_contact"
  double inradius;
  UnitVector center;
  std::vector<UnitVector> contacts;
  std::vector<UnitVector> apexes;
  double area_body;
  double area_cap_domain;
  double area_symmetric;
  double area_reuleaux;
  double area_reuleaux_minus_symmetric;
  double area_symmetric_minus_reuleaux;
  std::vector<ReplayCheck> checks;
  bool all_pass;
};

struct ReplayOptions {
  double tol = kGeoTol;
  std::size_t inclusion_samples = 5000;
  std::size_t overlap_samples = 20000;
  std::size_t arm_samples = 100;
  std::uint64_t seed = 0;
};

/// Runs the whole argument on one instance and records every inequality.
ReplayTrace replay_proof(const GeneratorSet& X, const ReplayOptions& opts = {});

}  // namespace wideball
