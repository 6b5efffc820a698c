#pragma once

// Points, balls and generator sets on the unit sphere S^d embedded in E^{d+1}.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wideball {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Geometric tolerance for containment and incidence decisions.
inline constexpr double kGeoTol = 1e-9;
/// Tolerance for pure arithmetic identities.
inline constexpr double kAlgTol = 1e-12;

// Errors. Everything thrown by the library derives from std::exception;
// InputError marks bad arguments, the rest mark numerical or structural trouble.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of S^d stored as a unit vector with d+1 coordinates, d >= 2.
class UnitVector {
 public:
  /// Normalizes `coords`. Throws InputError for the zero vector or fewer than 3 coordinates.
  explicit UnitVector(const Vec& coords);
  UnitVector(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const Vec& coords() const { return coords_; }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  UnitVector operator-() const { return UnitVector(-coords_); }

 private:
  Vec coords_;
};

/// Closed ball B[center, radius] with radius in (0, pi/2].
class BallSpec {
 public:
  BallSpec(UnitVector center, double radius);

  const UnitVector& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  UnitVector center_;
  double radius_;
};

/// Finite generator set X with diam(X) <= r; its r-dual X^r is a wide r-ball body.
class GeneratorSet {
 public:
  GeneratorSet(int dim, double radius, std::vector<UnitVector> points);

  int dim() const { return dim_; }
  double radius() const { return radius_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<UnitVector>& points() const { return points_; }
  const UnitVector& operator[](std::size_t i) const { return points_[i]; }

  /// Points as columns, (d+1) x n.
  const Mat& matrix() const { return matrix_; }

 private:
  int dim_;
  double radius_;
  std::vector<UnitVector> points_;
  Mat matrix_;
};

/// Intersection of two closed hemispheres centered at u and v (u != v, not antipodal).
class Lune {
 public:
  Lune(UnitVector u, UnitVector v);

  const UnitVector& u() const { return u_; }
  const UnitVector& v() const { return v_; }
  /// pi - dist(u, v)
  double width() const;
  bool contains(const UnitVector& y, double tol = kGeoTol) const;

 private:
  UnitVector u_;
  UnitVector v_;
};

// ---------------------------------------------------------------------------
// Metric primitives

/// Geodesic distance in [0, pi]. Throws InputError on dimension mismatch.
double spherical_distance(const UnitVector& a, const UnitVector& b);

/// Max pairwise spherical distance; 0 for a singleton. Throws InputError when empty.
double diameter(std::span<const UnitVector> points);

/// True iff dist(y, x) <= r + tol for every generator x.
bool dual_membership(const UnitVector& y, const GeneratorSet& X, double tol = kAlgTol);

/// n i.i.d. uniform points on S^d (normalized Gaussians), deterministic in `seed`.
std::vector<UnitVector> sample_uniform(int d, std::size_t n, std::uint64_t seed);

/// Random wide generator set: candidates drawn uniformly in the Jung cap around a
/// random pole, kept only if they stay within r of every accepted point.
GeneratorSet sample_wide_generator(int d, double r, std::size_t n_points, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Lower-level helpers on raw coordinates. Inputs are assumed unit length.

namespace geo {

/// 2 atan2(|a-b|, |a+b|): same value as acos(<a,b>) but accurate near 0 and pi.
double dist(const Vec& a, const Vec& b);

/// Distance via acos of the clamped inner product; faster, less accurate near 0.
inline double dist_fast(const Vec& a, const Vec& b) {
  double c = a.dot(b);
  c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
  return std::acos(c);
}

/// Unit tangent at `from` pointing along the geodesic to `to`.
/// Falls back to an arbitrary tangent when `to` is (anti)podal to `from`.
Vec tangent_toward(const Vec& from, const Vec& to);

/// Point at arc length s from p along unit tangent t.
inline Vec walk(const Vec& p, const Vec& t, double s) { return std::cos(s) * p + std::sin(s) * t; }

/// Orthonormal basis of the tangent space at p, as columns ((d+1) x d).
/// For d = 2 the basis (e1, e2) satisfies e1 x e2 = p.
Mat tangent_basis(const Vec& p);

/// Geodesic midpoint; a and b must not be antipodal.
Vec midpoint(const Vec& a, const Vec& b);

/// Volume of S^d, (d+1) pi^{(d+1)/2} / Gamma((d+3)/2).
double sphere_volume(int d);

/// Volume of a cap B[x, rho] in S^d, rho in [0, pi].
double cap_volume(int d, double rho);

/// splitmix64 mix of (seed, stream), used to split one seed into independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// S^2 only: inputs have 3 coordinates.

/// a x b
Vec cross(const Vec& a, const Vec& b);

/// Counterclockwise angle (seen from outside) of y around c, measured from the
/// direction of `ref`, in [0, 2 pi).
double angle_about(const Vec& c, const Vec& ref, const Vec& y);

/// Rotation of p about the axis c by phi, counterclockwise seen from outside.
Vec rotate_about(const Vec& c, const Vec& p, double phi);

/// Points z with dist(z, a) = alpha and dist(z, b) = beta; empty when the circles
/// miss or a, b are (anti)podal. Near-tangent circles return the double point twice.
std::vector<Vec> circle_intersections(const Vec& a, double alpha, const Vec& b, double beta);

/// Uniform standard Gaussian direction on S^d.
Vec random_unit(int d, Rng& rng);

/// Uniform sampler for the cap B[center, radius] in S^d with radius <= pi/2.
class CapSampler {
 public:
  CapSampler(const Vec& center, double radius);
  /// Writes one sample into `out` (resized on first use).
  void sample(Rng& rng, Vec& out);
  double volume() const { return volume_; }

 private:
  Vec center_;
  Mat basis_;
  double radius_;
  double sin_radius_;
  double volume_;
  int d_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  Vec tangent_;
};

}  // namespace geo

}  // namespace wideball
