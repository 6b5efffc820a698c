#include "wideball/sphere_core.hpp"

#include "wideball/ball_body.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wideball {

namespace {

Vec normalized_or_throw(const Vec& coords) {
  if (coords.size() < 3) {
    throw InputError("UnitVector needs at least 3 coordinates (d >= 2)");
  }
  if (!coords.allFinite()) {
    throw InputError("UnitVector coordinates must be finite");
  }
  const double n = coords.norm();
  if (!(n > 0.0)) {
    throw InputError("UnitVector cannot be built from the zero vector");
  }
  return coords / n;
}

Vec from_list(std::initializer_list<double> coords) {
  Vec v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

void check_same_dim(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: S^" << a.dim() << " vs S^" << b.dim();
    throw InputError(os.str());
  }
}

}  // namespace

UnitVector::UnitVector(const Vec& coords) : coords_(normalized_or_throw(coords)) {}

UnitVector::UnitVector(std::initializer_list<double> coords)
    : coords_(normalized_or_throw(from_list(coords))) {}

BallSpec::BallSpec(UnitVector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0) || radius > kHalfPi + kAlgTol) {
    throw InputError("ball radius must lie in (0, pi/2]");
  }
}

GeneratorSet::GeneratorSet(int dim, double radius, std::vector<UnitVector> points)
    : dim_(dim), radius_(radius), points_(std::move(points)) {
  if (dim < 2) throw InputError("generator set dimension must be >= 2");
  if (!(radius > 0.0) || radius > kHalfPi + kAlgTol) {
    throw InputError("generator radius must lie in (0, pi/2]");
  }
  if (points_.empty()) throw InputError("generator set must be nonempty");
  for (const auto& p : points_) {
    if (p.dim() != dim) throw InputError("generator point has the wrong dimension");
  }
  const double diam = diameter(points_);
  if (diam > radius + kAlgTol) {
    std::ostringstream os;
    os.precision(17);
    os << "generator set is not wide: diam " << diam << " exceeds radius " << radius;
    throw InputError(os.str());
  }
  matrix_.resize(dim + 1, static_cast<Eigen::Index>(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    matrix_.col(static_cast<Eigen::Index>(i)) = points_[i].coords();
  }
}

Lune::Lune(UnitVector u, UnitVector v) : u_(std::move(u)), v_(std::move(v)) {
  check_same_dim(u_, v_);
  const double d = geo::dist(u_.coords(), v_.coords());
  if (d <= 0.0) throw InputError("lune hemispheres must be distinct");
  if (d >= kPi) throw InputError("lune hemispheres must not be opposite");
}

double Lune::width() const { return kPi - geo::dist(u_.coords(), v_.coords()); }

bool Lune::contains(const UnitVector& y, double tol) const {
  return geo::dist(u_.coords(), y.coords()) <= kHalfPi + tol &&
         geo::dist(v_.coords(), y.coords()) <= kHalfPi + tol;
}

double spherical_distance(const UnitVector& a, const UnitVector& b) {
  check_same_dim(a, b);
  return geo::dist(a.coords(), b.coords());
}

double diameter(std::span<const UnitVector> points) {
  if (points.empty()) throw InputError("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, spherical_distance(points[i], points[j]));
    }
  }
  return best;
}

bool dual_membership(const UnitVector& y, const GeneratorSet& X, double tol) {
  if (y.dim() != X.dim()) throw InputError("dual_membership: dimension mismatch");
  const double limit = X.radius() + tol;
  for (const auto& x : X.points()) {
    if (geo::dist(y.coords(), x.coords()) > limit) return false;
  }
  return true;
}

std::vector<UnitVector> sample_uniform(int d, std::size_t n, std::uint64_t seed) {
  if (d < 2) throw InputError("sample_uniform: d must be >= 2");
  Rng rng(geo::derive_seed(seed, 0));
  std::vector<UnitVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(geo::random_unit(d, rng));
  return out;
}

GeneratorSet sample_wide_generator(int d, double r, std::size_t n_points, std::uint64_t seed) {
  if (d < 2) throw InputError("sample_wide_generator: d must be >= 2");
  if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("sample_wide_generator: r must lie in (0, pi/2]");
  n_points = std::max<std::size_t>(n_points, 1);
  Rng rng(geo::derive_seed(seed, 1));
  const Vec pole = geo::random_unit(d, rng);
  geo::CapSampler cap(pole, jung_circumradius(d, r));

  std::vector<Vec> accepted;
  const double cos_r = std::cos(r);
  Vec candidate;
  const std::size_t budget = 200 * n_points;
  for (std::size_t attempt = 0; attempt < budget && accepted.size() < n_points; ++attempt) {
    cap.sample(rng, candidate);
    bool ok = true;
    for (const auto& a : accepted) {
      // Quick accept by inner product, exact check otherwise; the margin keeps
      // the diameter check in GeneratorSet strict.
      if (candidate.dot(a) < cos_r + 1e-6 && geo::dist(candidate, a) > r - 1e-13) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(candidate);
  }
  std::vector<UnitVector> pts;
  pts.reserve(accepted.size());
  for (const auto& a : accepted) pts.emplace_back(a);
  return GeneratorSet(d, r, std::move(pts));
}

namespace geo {

double dist(const Vec& a, const Vec& b) {
  const double minus = (a - b).norm();
  const double plus = (a + b).norm();
  return 2.0 * std::atan2(minus, plus);
}

Vec tangent_toward(const Vec& from, const Vec& to) {
  // Project the difference rather than `to` itself: exact zero for coincident points.
  const Vec diff = to - from;
  Vec t = diff - from.dot(diff) * from;
  const double n = t.norm();
  if (n < 1e-15) {
    return tangent_basis(from).col(0);
  }
  return t / n;
}

Mat tangent_basis(const Vec& p) {
  const Eigen::Index m = p.size();
  Mat basis(m, m - 1);
  if (m == 3) {
    // Pick the axis least aligned with p, then build a right-handed frame.
    Eigen::Index k = 0;
    p.cwiseAbs().minCoeff(&k);
    Vec axis = Vec::Zero(3);
    axis[k] = 1.0;
    Eigen::Vector3d e1 = (axis - p.dot(axis) * p).normalized();
    Eigen::Vector3d pp = p;
    Eigen::Vector3d e2 = pp.cross(e1);
    basis.col(0) = e1;
    basis.col(1) = e2;
    return basis;
  }
  Eigen::Index skip = 0;
  p.cwiseAbs().maxCoeff(&skip);
  Eigen::Index col = 0;
  for (Eigen::Index k = 0; k < m && col < m - 1; ++k) {
    if (k == skip) continue;
    Vec e = Vec::Zero(m);
    e[k] = 1.0;
    e -= p.dot(e) * p;
    for (Eigen::Index j = 0; j < col; ++j) e -= basis.col(j).dot(e) * basis.col(j);
    // Second pass for numerical orthogonality.
    e -= p.dot(e) * p;
    for (Eigen::Index j = 0; j < col; ++j) e -= basis.col(j).dot(e) * basis.col(j);
    basis.col(col++) = e.normalized();
  }
  return basis;
}

Vec midpoint(const Vec& a, const Vec& b) { return (a + b).normalized(); }

double sphere_volume(int d) {
  return (d + 1) * std::pow(kPi, (d + 1) / 2.0) / std::tgamma((d + 3) / 2.0);
}

double cap_volume(int d, double rho) {
  rho = std::clamp(rho, 0.0, kPi);
  // I_n = int_0^rho sin^n t dt via I_n = -sin^{n-1} cos / n + (n-1)/n I_{n-2}.
  const int n = d - 1;
  const double s = std::sin(rho);
  const double c = std::cos(rho);
  double integral = (n % 2 == 0) ? rho : 1.0 - c;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
    integral = -std::pow(s, k - 1) * c / k + (k - 1.0) / k * integral;
  }
  return sphere_volume(d - 1) * integral;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vec cross(const Vec& a, const Vec& b) {
  const Eigen::Vector3d c = Eigen::Vector3d(a[0], a[1], a[2]).cross(Eigen::Vector3d(b[0], b[1], b[2]));
  return Vec(c);
}

double angle_about(const Vec& c, const Vec& ref, const Vec& y) {
  const Vec e1 = tangent_toward(c, ref);
  const Vec e2 = cross(c, e1);
  const Vec t = y - c.dot(y) * c;
  double a = std::atan2(t.dot(e2), t.dot(e1));
  if (a < 0.0) a += kTwoPi;
  return a;
}

Vec rotate_about(const Vec& c, const Vec& p, double phi) {
  const double along = c.dot(p);
  const Vec radial = p - along * c;
  return along * c + std::cos(phi) * radial + std::sin(phi) * cross(c, radial);
}

std::vector<Vec> circle_intersections(const Vec& a, double alpha, const Vec& b, double beta) {
  const double g = a.dot(b);
  const Vec n = cross(a, b);
  const double n2 = n.squaredNorm();
  if (n2 < 1e-30) return {};
  // z = A a + B b + t n with <z,a> = cos alpha, <z,b> = cos beta.
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double A = (ca - g * cb) / n2;
  const double B = (cb - g * ca) / n2;
  const Vec base = A * a + B * b;
  double t2 = (1.0 - base.squaredNorm()) / n2;
  if (t2 < 0.0) {
    if (t2 < -1e-12) return {};
    t2 = 0.0;
  }
  const double t = std::sqrt(t2);
  return {(base + t * n).normalized(), (base - t * n).normalized()};
}

Vec random_unit(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(d + 1);
  double n = 0.0;
  do {
    for (int i = 0; i <= d; ++i) v[i] = normal(rng);
    n = v.norm();
  } while (n < 1e-12);
  return v / n;
}

CapSampler::CapSampler(const Vec& center, double radius)
    : center_(center),
      basis_(tangent_basis(center)),
      radius_(std::clamp(radius, 0.0, kPi)),
      sin_radius_(radius_ >= kHalfPi ? 1.0 : std::sin(radius_)),
      volume_(cap_volume(static_cast<int>(center.size()) - 1, radius_)),
      d_(static_cast<int>(center.size()) - 1),
      tangent_(d_) {}

void CapSampler::sample(Rng& rng, Vec& out) {
  double theta = 0.0;
  if (d_ == 2) {
    // On S^2 the cosine of the polar angle is uniform.
    const double lo = std::cos(radius_);
    theta = std::acos(lo + (1.0 - lo) * unit_(rng));
  } else {
    // Polar angle density is proportional to sin^{d-1}.
    for (;;) {
      theta = radius_ * unit_(rng);
      const double ratio = std::sin(theta) / sin_radius_;
      if (unit_(rng) <= std::pow(ratio, d_ - 1)) break;
    }
  }
  double n = 0.0;
  do {
    for (int i = 0; i < d_; ++i) tangent_[i] = normal_(rng);
    n = tangent_.norm();
  } while (n < 1e-12);
  out.noalias() = std::cos(theta) * center_ + (std::sin(theta) / n) * (basis_ * tangent_);
}

}  // namespace geo

}  // namespace wideball
