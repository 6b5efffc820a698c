#pragma once

// Wide r-disk domains on S^2: exact arc boundary, Gauss-Bonnet area, width, inradius.

#include "wideball/ball_body.hpp"
#include "wideball/sphere_core.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wideball {

/// Circular arc on S^2 of spherical radius `radius` about `center`, running from
/// `from` to `to` through the signed angle `sweep` (positive = counterclockwise about
/// `center` as seen from outside the sphere).
struct CircularArc {
  Vec center;
  double radius;
  Vec from;
  Vec to;
  double sweep;

  /// Point at parameter t in [0, 1] along the arc.
  Vec at(double t) const;
  /// Unit tangent in the direction of travel at a point of the circle.
  Vec tangent(const Vec& y) const;
  double length() const;
};

/// Signed turning angles at the joints of a closed arc path (joint k sits
/// between arc k-1 and arc k). Positive means a left turn.
std::vector<double> exterior_angles(std::span<const CircularArc> path);

/// Gauss-Bonnet area of the region to the left of a closed arc path:
/// 2 pi - sum(turning angles) - sum(cos(radius_k) * sweep_k).
double arc_path_area(std::span<const CircularArc> path);

/// One boundary arc of a wide r-disk domain, carried by generator `generator`.
struct Arc {
  UnitVector center;
  UnitVector from;
  UnitVector to;
  /// Central angle about `center`, in (0, 2 pi].
  double span;
  std::size_t generator;
};

/// Counterclockwise boundary of B[X, r] for finite X on S^2.
struct ArcBoundary {
  double radius;
  /// Empty when the domain is a single ball (see full_ball).
  std::vector<Arc> arcs;
  std::optional<BallSpec> full_ball;
  /// Chebyshev center of the generators, an interior point of the domain.
  UnitVector interior_point;
  /// Generators whose circle carries no arc.
  std::vector<std::size_t> redundant_generators;
  std::vector<std::string> warnings;

  std::vector<UnitVector> vertices() const;
  /// The boundary as a closed arc path (a single full circle for a ball).
  std::vector<CircularArc> path() const;
};

struct BodyMetrics {
  double area;
  double perimeter;
  double width;
  double inradius;
  double circumradius_of_generators;
  double diameter_of_dual_of_dual;
};

struct Width2d {
  double value;
  /// Missing only for the hemisphere (singleton generator with r = pi/2).
  std::optional<Lune> witness;
};

/// Throws InputError unless X lives on S^2.
ArcBoundary boundary_structure(const GeneratorSet& X);

double area(const ArcBoundary& boundary);
double perimeter(const ArcBoundary& boundary);

/// Three points at pairwise distance r placed symmetrically about the north pole.
GeneratorSet reuleaux_triangle(double r);

/// Largest distance from u to a point of the domain, exact for arc boundaries.
double farthest_distance(const ArcBoundary& boundary, const Vec& u);

/// Minimal spherical width, computed as pi minus the diameter of the polar body
/// {u : the hemisphere centered at u contains the domain}.
Width2d width_2d(const GeneratorSet& X);
Width2d width_2d(const GeneratorSet& X, const ArcBoundary& boundary, int n_directions = 360);

/// (r - circumradius(X), Chebyshev center).
Inscribed inradius_2d(const GeneratorSet& X);

/// Area, perimeter, width, inradius and hull diameter of one domain.
BodyMetrics body_metrics(const GeneratorSet& X, std::uint64_t seed = 0, std::size_t hull_support = 400);

}  // namespace wideball
