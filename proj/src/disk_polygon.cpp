#include "wideball/disk_polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wideball {

namespace {

using geo::angle_about;
using geo::cross;
using geo::rotate_about;

Eigen::Vector3d v3(const Vec& v) { return Eigen::Vector3d(v[0], v[1], v[2]); }

bool member_all(const Vec& y, std::span<const Vec> centers, double cos_limit) {
  for (const auto& x : centers) {
    if (y.dot(x) < cos_limit) return false;
  }
  return true;
}

}  // namespace

Vec CircularArc::at(double t) const { return rotate_about(center, from, t * sweep); }

Vec CircularArc::tangent(const Vec& y) const {
  Vec t = cross(center, y);
  const double n = t.norm();
  if (n < 1e-300) throw StructuralError("arc tangent requested at the arc center");
  t /= n;
  return sweep >= 0.0 ? t : Vec(-t);
}

double CircularArc::length() const { return std::sin(radius) * std::abs(sweep); }

std::vector<double> exterior_angles(std::span<const CircularArc> path) {
  const std::size_t n = path.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const CircularArc& in = path[(k + n - 1) % n];
    const CircularArc& next = path[k];
    const Vec& v = next.from;
    if (geo::dist(in.to, v) > 1e-7) {
      std::ostringstream os;
      os << "arc path is not closed at joint " << k << " (gap " << geo::dist(in.to, v) << ")";
      throw StructuralError(os.str());
    }
    const Eigen::Vector3d t_in = v3(in.tangent(v));
    const Eigen::Vector3d t_out = v3(next.tangent(v));
    out[k] = std::atan2(t_in.cross(t_out).dot(v3(v)), t_in.dot(t_out));
  }
  return out;
}

double arc_path_area(std::span<const CircularArc> path) {
  if (path.empty()) throw StructuralError("empty arc path");
  const auto turning = exterior_angles(path);
  double a = kTwoPi;
  for (double t : turning) a -= t;
  for (const auto& arc : path) a -= std::cos(arc.radius) * arc.sweep;
  return a;
}

std::vector<UnitVector> ArcBoundary::vertices() const {
  std::vector<UnitVector> out;
  out.reserve(arcs.size());
  for (const auto& a : arcs) out.push_back(a.from);
  return out;
}

std::vector<CircularArc> ArcBoundary::path() const {
  std::vector<CircularArc> out;
  if (full_ball) {
    const Vec& c = full_ball->center().coords();
    const Vec start = geo::walk(c, geo::tangent_basis(c).col(0), radius);
    out.push_back({c, radius, start, start, kTwoPi});
    return out;
  }
  for (const auto& a : arcs) {
    out.push_back({a.center.coords(), radius, a.from.coords(), a.to.coords(), a.span});
  }
  return out;
}

ArcBoundary boundary_structure(const GeneratorSet& X) {
  if (X.dim() != 2) throw InputError("boundary_structure needs generators on S^2");
  const double r = X.radius();

  std::vector<std::string> warnings;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < X.size(); ++i) {
    bool dup = false;
    for (std::size_t j : keep) {
      if (geo::dist(X[i].coords(), X[j].coords()) < kGeoTol) {
        std::ostringstream os;
        os << "generator " << i << " coincides with generator " << j << "; dropped";
        warnings.push_back(os.str());
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }

  std::vector<UnitVector> uniq;
  std::vector<Vec> centers;
  for (std::size_t i : keep) {
    uniq.push_back(X[i]);
    centers.push_back(X[i].coords());
  }
  const Circumball cb = circumradius_minimax(uniq);

  ArcBoundary out{r, {}, std::nullopt, cb.center, {}, std::move(warnings)};
  if (keep.size() == 1) {
    out.full_ball = BallSpec(X[keep[0]], r);
    out.interior_point = X[keep[0]];
    return out;
  }

  const double cos_limit = std::cos(r + kGeoTol);
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      for (const Vec& y : geo::circle_intersections(centers[i], r, centers[j], r)) {
        if (!member_all(y, centers, cos_limit)) continue;
        bool dup = false;
        for (const auto& w : verts) {
          if (geo::dist(w, y) < kGeoTol) {
            dup = true;
            break;
          }
        }
        if (!dup) verts.push_back(y);
      }
    }
  }
  if (verts.size() < 2) {
    throw StructuralError("boundary has fewer than two vertices for distinct generators");
  }

  const Vec& c = cb.center.coords();
  const Mat basis = geo::tangent_basis(c);
  std::vector<double> ang(verts.size());
  for (std::size_t k = 0; k < verts.size(); ++k) {
    ang[k] = std::atan2(verts[k].dot(basis.col(1)), verts[k].dot(basis.col(0)));
  }
  std::vector<std::size_t> order(verts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });

  std::vector<bool> used(centers.size(), false);
  const double on_circle = 1e-8;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Vec& p = verts[order[k]];
    const Vec& q = verts[order[(k + 1) % order.size()]];
    double best_span = kTwoPi + 1.0;
    std::size_t best = centers.size();
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const Vec& x = centers[i];
      if (std::abs(geo::dist(x, p) - r) > on_circle || std::abs(geo::dist(x, q) - r) > on_circle) continue;
      double span = angle_about(x, p, q);
      if (span < 1e-12) span = kTwoPi;
      const Vec mid = rotate_about(x, p, 0.5 * span);
      if (!member_all(mid, centers, cos_limit)) continue;
      if (span < best_span) {
        best_span = span;
        best = i;
      }
    }
    if (best == centers.size()) {
      std::ostringstream os;
      os << "no generator carries the boundary arc after vertex " << k;
      throw StructuralError(os.str());
    }
    used[best] = true;
    out.arcs.push_back({uniq[best], UnitVector(p), UnitVector(q), best_span, keep[best]});
  }
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!used[i]) out.redundant_generators.push_back(keep[i]);
  }
  return out;
}

double area(const ArcBoundary& boundary) {
  const auto p = boundary.path();
  return arc_path_area(p);
}

double perimeter(const ArcBoundary& boundary) {
  if (boundary.full_ball) return kTwoPi * std::sin(boundary.radius);
  double total = 0.0;
  for (const auto& a : boundary.arcs) total += a.span;
  return std::sin(boundary.radius) * total;
}

GeneratorSet reuleaux_triangle(double r) {
  if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("reuleaux_triangle: r must lie in (0, pi/2]");
  const double polar = jung_circumradius(2, r);
  std::vector<UnitVector> pts;
  for (int k = 0; k < 3; ++k) {
    const double phi = kTwoPi * k / 3.0;
    Vec p(3);
    p << std::sin(polar) * std::cos(phi), std::sin(polar) * std::sin(phi), std::cos(polar);
    pts.emplace_back(p);
  }
  return GeneratorSet(2, r, std::move(pts));
}

double farthest_distance(const ArcBoundary& boundary, const Vec& u) {
  const double r = boundary.radius;
  if (boundary.full_ball) {
    return std::min(kPi, geo::dist(u, boundary.full_ball->center().coords()) + r);
  }
  double best = 0.0;
  for (const auto& a : boundary.arcs) {
    best = std::max(best, geo::dist(u, a.from.coords()));
    const Vec& x = a.center.coords();
    const double ux = geo::dist(u, x);
    if (ux < 1e-15 || ux > kPi - 1e-15) continue;
    // Point of the carrier circle farthest from u.
    const Vec far = geo::walk(x, -geo::tangent_toward(x, u), r);
    if (angle_about(x, a.from.coords(), far) <= a.span) {
      best = std::max(best, geo::dist(u, far));
    }
  }
  return best;
}

Width2d width_2d(const GeneratorSet& X) { return width_2d(X, boundary_structure(X)); }

Width2d width_2d(const GeneratorSet& X, const ArcBoundary& boundary, int n_directions) {
  if (X.dim() != 2) throw InputError("width_2d needs generators on S^2");
  const double r = X.radius();
  const double rho = kHalfPi - r;

  // Pair candidates: hemispheres tangent to B[x_i, r] and B[x_j, r] on their far sides.
  // The lune between them contains the domain and has width 2r - dist(x_i, x_j).
  double best_sep = -1.0;
  Vec bu, bv;
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = i; j < X.size(); ++j) {
      const Vec& a = X[i].coords();
      const Vec& b = X[j].coords();
      Vec t = geo::tangent_toward(a, b);
      Vec s = geo::tangent_toward(b, a);
      if (geo::dist(a, b) < 1e-15) s = -t;
      const Vec u = geo::walk(a, -t, rho);
      const Vec v = geo::walk(b, -s, rho);
      const double sep = geo::dist(u, v);
      if (sep > best_sep) {
        best_sep = sep;
        bu = u;
        bv = v;
      }
    }
  }

  // Numeric refinement over the polar body K° = {u : F(u) <= pi/2}, traced radially
  // from the interior point.
  const Vec p = boundary.interior_point.coords();
  auto feasible = [&](const Vec& u) { return farthest_distance(boundary, u) <= kHalfPi; };
  if (n_directions > 0 && farthest_distance(boundary, p) < kHalfPi - 1e-9) {
    const Mat basis = geo::tangent_basis(p);
    auto edge = [&](double phi) {
      const Vec dir = std::cos(phi) * basis.col(0) + std::sin(phi) * basis.col(1);
      if (feasible(geo::walk(p, dir, kHalfPi))) return Vec(geo::walk(p, dir, kHalfPi));
      double lo = 0.0, hi = kHalfPi;
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(geo::walk(p, dir, mid))) lo = mid; else hi = mid;
      }
      return Vec(geo::walk(p, dir, lo));
    };
    std::vector<Vec> ring(static_cast<std::size_t>(n_directions));
    const double step = kTwoPi / n_directions;
    for (int k = 0; k < n_directions; ++k) ring[k] = edge(k * step);
    double sep = -1.0;
    int ka = 0, kb = 0;
    for (int a = 0; a < n_directions; ++a) {
      for (int b = a + 1; b < n_directions; ++b) {
        const double s = geo::dist(ring[a], ring[b]);
        if (s > sep) {
          sep = s;
          ka = a;
          kb = b;
        }
      }
    }
    double pa = ka * step, pb = kb * step;
    auto golden = [&](double centre, const Vec& other) {
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double lo = centre - step, hi = centre + step;
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = geo::dist(edge(x1), other), f2 = geo::dist(edge(x2), other);
      for (int it = 0; it < 40; ++it) {
        if (f1 > f2) {
          hi = x2; x2 = x1; f2 = f1;
          x1 = hi - g * (hi - lo); f1 = geo::dist(edge(x1), other);
        } else {
          lo = x1; x1 = x2; f1 = f2;
          x2 = lo + g * (hi - lo); f2 = geo::dist(edge(x2), other);
        }
      }
      const double cand = 0.5 * (lo + hi);
      return geo::dist(edge(cand), other) > geo::dist(edge(centre), other) ? cand : centre;
    };
    for (int round = 0; round < 4; ++round) {
      pa = golden(pa, edge(pb));
      pb = golden(pb, edge(pa));
    }
    const Vec u = edge(pa), v = edge(pb);
    const double s = geo::dist(u, v);
    if (s > best_sep) {
      best_sep = s;
      bu = u;
      bv = v;
    }
  }

  Width2d out{kPi - best_sep, std::nullopt};
  if (best_sep > 1e-12 && best_sep < kPi) out.witness = Lune(UnitVector(bu), UnitVector(bv));
  return out;
}

Inscribed inradius_2d(const GeneratorSet& X) {
  if (X.dim() != 2) throw InputError("inradius_2d needs generators on S^2");
  return inradius_nd(X);
}

BodyMetrics body_metrics(const GeneratorSet& X, std::uint64_t seed, std::size_t hull_support) {
  const ArcBoundary b = boundary_structure(X);
  const Inscribed in = inradius_2d(X);
  const RHull hull = r_hull(X, hull_support, seed);
  return {area(b), perimeter(b), width_2d(X, b).value, in.radius, X.radius() - in.radius, hull.hull_diameter};
}

}  // namespace wideball
