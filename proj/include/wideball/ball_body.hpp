#pragma once

// Dimension-generic operations on wide r-ball bodies X^r in S^d.

#include "wideball/sphere_core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wideball {

/// Smallest enclosing cap of a point set.
struct Circumball {
  double radius;
  UnitVector center;
  /// Indices of the points at maximal distance, with their convex weights:
  /// the center is the normalized weighted sum (first-order optimality witness).
  std::vector<std::size_t> support;
  std::vector<double> weights;
};

/// Largest ball inside X^r.
struct Inscribed {
  double radius;
  UnitVector center;
};

/// Regular spherical d-simplex with edge r; its r-dual is Delta_d(r).
struct SimplexBody {
  int dim;
  double radius;
  std::vector<UnitVector> vertices;

  GeneratorSet generators() const { return GeneratorSet(dim, radius, vertices); }
};

struct WidthEstimate {
  double value;
  /// Missing only for the degenerate hemisphere case (singleton generator, r = pi/2).
  std::optional<Lune> witness;
  /// value >= r - tol
  bool certified_lower;
  /// Both centers of the bounding half-great-spheres lie in the body.
  bool witness_centers_in_body;
  std::size_t iterations;
  std::uint64_t seed;
};

struct VolumeEstimate {
  double mean;
  double std_error;
  std::size_t n_samples;
  std::uint64_t seed;
  std::size_t n_streams;
  /// Volume of the proposal cap the hits were counted in.
  double proposal_volume;
};

/// Finite outer approximation of (X^r)^r.
struct RHull {
  /// Boundary points of X^r whose r-dual approximates (X^r)^r from outside.
  std::vector<UnitVector> support;
  /// Points of the approximate hull: X itself plus radial boundary points.
  std::vector<UnitVector> hull_points;
  double hull_diameter;
};

struct SchrammBound {
  /// Lower bound on the minimum volume of constant width pi/2 bodies.
  double bound;
  /// vol_s(Delta_d(pi/2)) = (d+1) omega_{d+1} / 2^{d+1}
  double reference;
};

/// Min over centers c of max_x dist(c, x). Solved exactly as the min-norm point of
/// conv(X) (Wolfe's algorithm): the optimal center is that point normalized.
/// Throws InfeasibleError when the points are not in an open hemisphere.
Circumball circumradius_minimax(std::span<const UnitVector> points);

/// arccos sqrt((1 + d cos r) / (d + 1)): circumradius of the regular d-simplex with edge r.
double jung_circumradius(int d, double r);

/// (r - circumradius(X), Chebyshev center of X).
Inscribed inradius_nd(const GeneratorSet& X);

/// Vertices from the Cholesky factor of the Gram matrix (1 - cos r) I + cos r J.
SimplexBody regular_simplex(int d, double r);

/// Sampling of the boundary of X^r, stratified by how many generator spheres a
/// point lies on: exact vertices (d spheres), random points on lower strata,
/// and random radial pushes from the Chebyshev center.
struct BoundarySampling {
  std::size_t radial = 400;
  std::size_t per_stratum = 200;
};
std::vector<UnitVector> sample_dual_boundary(const GeneratorSet& X, const BoundarySampling& opts,
                                             std::uint64_t seed);

/// Outer approximation of (X^r)^r generated by a boundary sample of X^r.
RHull r_hull(const GeneratorSet& X, std::size_t n_support, std::uint64_t seed,
             std::size_t n_directions = 0);

/// Stochastic search over lunes containing X^r. Every evaluated lune contains X^r
/// exactly, so the result is an upper bound on the true width.
WidthEstimate width_nd(const GeneratorSet& X, std::size_t budget, std::uint64_t seed);

/// Monte-Carlo volume of X^r by uniform sampling in B[c, r] around the Chebyshev center.
/// Throws InputError for n < 100.
VolumeEstimate mc_volume(const GeneratorSet& X, std::size_t n, std::uint64_t seed,
                         std::size_t n_streams = 1);

/// Closed-form Schramm bound. Throws InputError for d < 3.
SchrammBound schramm_bound(int d);

/// vol_s(Delta_d(pi/2)) = vol(S^d) / 2^{d+1}
double simplex_body_volume_half_pi(int d);

}  // namespace wideball
