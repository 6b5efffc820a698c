#include "wideball/ball_body.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

namespace wideball {

namespace {

// Wolfe's minimum-norm-point algorithm on the columns of P.
// Returns the active set and convex weights of the nearest point of conv(P) to 0.
struct MinNorm {
  Vec point;
  std::vector<Eigen::Index> active;
  std::vector<double> weights;
};

MinNorm min_norm_point(const Mat& P) {
  constexpr double kMajorTol = 1e-15;
  constexpr double kWeightTol = 1e-14;

  std::vector<Eigen::Index> S{0};
  std::vector<double> w{1.0};
  Vec x = P.col(0);

  auto combine = [&](const std::vector<double>& weights) {
    Vec out = Vec::Zero(P.rows());
    for (std::size_t i = 0; i < S.size(); ++i) out += weights[i] * P.col(S[i]);
    return out;
  };

  for (int major = 0; major < 10000; ++major) {
    Eigen::Index j = 0;
    (P.transpose() * x).minCoeff(&j);
    const double gap = x.squaredNorm() - x.dot(P.col(j));
    if (gap <= kMajorTol * std::max(1.0, P.col(j).squaredNorm())) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      const auto k = static_cast<Eigen::Index>(S.size());
      Mat A = Mat::Zero(k + 1, k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) A(a, b) = P.col(S[a]).dot(P.col(S[b]));
        A(a, k) = 1.0;
        A(k, a) = 1.0;
      }
      Vec rhs = Vec::Zero(k + 1);
      rhs[k] = 1.0;
      const Vec sol = A.completeOrthogonalDecomposition().solve(rhs);
      std::vector<double> v(sol.data(), sol.data() + k);

      if (std::all_of(v.begin(), v.end(), [](double t) { return t > kWeightTol; })) {
        w = v;
        x = combine(w);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= kWeightTol) {
          const double denom = w[i] - v[i];
          if (denom > 0.0) theta = std::min(theta, w[i] / denom);
        }
      }
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = theta * v[i] + (1.0 - theta) * w[i];
      // Drop vanished weights (at least one), keeping the rest normalized.
      std::size_t drop = 0;
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] < w[drop]) drop = i;
      }
      std::vector<Eigen::Index> S2;
      std::vector<double> w2;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == drop || w[i] <= kWeightTol) continue;
        S2.push_back(S[i]);
        w2.push_back(w[i]);
      }
      if (S2.empty()) {
        S2.push_back(S[drop]);
        w2.push_back(1.0);
      }
      const double total = std::accumulate(w2.begin(), w2.end(), 0.0);
      for (double& t : w2) t /= total;
      S = std::move(S2);
      w = std::move(w2);
      x = combine(w);
    }
  }
  return {x, S, w};
}

Vec chebyshev_center(const GeneratorSet& X) { return circumradius_minimax(X.points()).center.coords(); }

// Largest s in [0, hi] with pred(walk(c, t, s)), assuming pred(c) and star-shapedness.
template <typename Pred>
double radial_bisect(const Vec& c, const Vec& t, double hi, Pred&& pred, int iterations) {
  if (pred(geo::walk(c, t, hi))) return hi;
  double lo = 0.0;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pred(geo::walk(c, t, mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// All k-subsets of {0..n-1}, lexicographic.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k == 0 || k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Circumball circumradius_minimax(std::span<const UnitVector> points) {
  if (points.empty()) throw InputError("circumradius_minimax: empty point set");
  const int d = points.front().dim();
  Mat P(d + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != d) throw InputError("circumradius_minimax: dimension mismatch");
    P.col(static_cast<Eigen::Index>(i)) = points[i].coords();
  }
  const MinNorm mn = min_norm_point(P);
  const double norm = mn.point.norm();
  if (norm < 1e-12) {
    throw InfeasibleError("circumradius_minimax: points are not contained in an open hemisphere");
  }
  const Vec c = mn.point / norm;
  double radius = 0.0;
  for (const auto& p : points) radius = std::max(radius, geo::dist(c, p.coords()));

  Circumball out{radius, UnitVector(c), {}, {}};
  for (std::size_t i = 0; i < mn.active.size(); ++i) {
    out.support.push_back(static_cast<std::size_t>(mn.active[i]));
    out.weights.push_back(mn.weights[i]);
  }
  return out;
}

double jung_circumradius(int d, double r) {
  if (d < 2) throw InputError("jung_circumradius: d must be >= 2");
  if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("jung_circumradius: r must lie in (0, pi/2]");
  const double one_minus_cos = 2.0 * std::sin(r / 2) * std::sin(r / 2);
  return std::atan2(std::sqrt(d * one_minus_cos), std::sqrt(1.0 + d * std::cos(r)));
}

Inscribed inradius_nd(const GeneratorSet& X) {
  const Circumball cb = circumradius_minimax(X.points());
  return {X.radius() - cb.radius, cb.center};
}

SimplexBody regular_simplex(int d, double r) {
  if (d < 2) throw InputError("regular_simplex: d must be >= 2");
  if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("regular_simplex: r must lie in (0, pi/2]");
  const double c = std::cos(r);
  Mat G = Mat::Constant(d + 1, d + 1, c);
  G.diagonal().setOnes();
  const Mat L = G.llt().matrixL();
  SimplexBody body{d, r, {}};
  for (int k = 0; k <= d; ++k) body.vertices.emplace_back(Vec(L.row(k).transpose()));
  return body;
}

std::vector<UnitVector> sample_dual_boundary(const GeneratorSet& X, const BoundarySampling& opts,
                                             std::uint64_t seed) {
  const int d = X.dim();
  const double r = X.radius();
  const double cos_r = std::cos(r);
  const Mat& G = X.matrix();
  const double member_cos = std::cos(r + kGeoTol);
  auto member = [&](const Vec& y) { return (G.transpose() * y).minCoeff() >= member_cos; };
  auto inside = [&](const Vec& y) { return (G.transpose() * y).minCoeff() >= cos_r; };

  Rng rng(geo::derive_seed(seed, 11));
  std::vector<UnitVector> out;

  // Radial pushes from the Chebyshev center.
  const Vec c = chebyshev_center(X);
  const Mat basis = geo::tangent_basis(c);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < opts.radial; ++i) {
    Vec g(d);
    for (int k = 0; k < d; ++k) g[k] = normal(rng);
    const Vec t = (basis * g).normalized();
    const double s = radial_bisect(c, t, r, inside, 55);
    out.emplace_back(geo::walk(c, t, s));
  }

  // Strata: points on the intersection of k generator spheres.
  const std::size_t n = X.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 1; k <= static_cast<std::size_t>(d) && k <= n; ++k) {
    const int m = d - static_cast<int>(k);  // stratum dimension
    for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
      const auto kk = static_cast<Eigen::Index>(k);
      Mat XI(d + 1, kk);
      for (Eigen::Index a = 0; a < kk; ++a) XI.col(a) = G.col(static_cast<Eigen::Index>(idx[a]));
      const Mat gram = XI.transpose() * XI;
      Eigen::FullPivLU<Mat> lu(gram);
      if (!lu.isInvertible()) return;
      const Vec alpha = lu.solve(Vec::Constant(kk, cos_r));
      const Vec y0 = XI * alpha;
      const double rest = 1.0 - y0.squaredNorm();
      if (rest < 0.0) return;
      const double h = std::sqrt(rest);
      Eigen::HouseholderQR<Mat> qr(XI);
      const Mat Q = qr.householderQ() * Mat::Identity(d + 1, d + 1);
      const Mat comp = Q.rightCols(d + 1 - kk);  // orthonormal complement of span(XI)

      auto emit = [&](const Vec& z) {
        Vec y = y0 + h * z;
        y.normalize();
        if (member(y)) out.emplace_back(y);
      };
      if (m == 0) {
        emit(comp.col(0));
        emit(-comp.col(0));
      } else if (m == 1) {
        const double offset = unit(rng) * kTwoPi;
        for (std::size_t s = 0; s < opts.per_stratum; ++s) {
          const double a = offset + kTwoPi * static_cast<double>(s) / static_cast<double>(opts.per_stratum);
          emit(std::cos(a) * comp.col(0) + std::sin(a) * comp.col(1));
        }
      } else {
        for (std::size_t s = 0; s < opts.per_stratum; ++s) {
          Vec g(m + 1);
          for (int q = 0; q <= m; ++q) g[q] = normal(rng);
          emit(comp * g.normalized());
        }
      }
    });
  }
  return out;
}

RHull r_hull(const GeneratorSet& X, std::size_t n_support, std::uint64_t seed, std::size_t n_directions) {
  const int d = X.dim();
  const double r = X.radius();
  if (n_directions == 0) n_directions = std::max<std::size_t>(n_support, 64);

  BoundarySampling opts;
  opts.radial = n_support;
  opts.per_stratum = std::max<std::size_t>(n_support / 2, 16);
  RHull hull;
  hull.support = sample_dual_boundary(X, opts, seed);

  Mat S(d + 1, static_cast<Eigen::Index>(hull.support.size()));
  for (std::size_t i = 0; i < hull.support.size(); ++i) S.col(static_cast<Eigen::Index>(i)) = hull.support[i].coords();
  const double member_cos = std::cos(r + kAlgTol);
  auto member = [&](const Vec& y) { return (S.transpose() * y).minCoeff() >= member_cos; };

  // (X^r)^r contains conv(X), hence the Chebyshev center; it lies in B[c, r].
  const Vec c = chebyshev_center(X);
  hull.hull_points = X.points();
  const Mat basis = geo::tangent_basis(c);
  Rng rng(geo::derive_seed(seed, 12));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < n_directions; ++i) {
    Vec t;
    if (d == 2) {
      const double a = kTwoPi * static_cast<double>(i) / static_cast<double>(n_directions);
      t = std::cos(a) * basis.col(0) + std::sin(a) * basis.col(1);
    } else {
      Vec g(d);
      for (int k = 0; k < d; ++k) g[k] = normal(rng);
      t = (basis * g).normalized();
    }
    const double s = radial_bisect(c, t, r, member, 45);
    hull.hull_points.emplace_back(geo::walk(c, t, s));
  }
  hull.hull_diameter = diameter(hull.hull_points);
  return hull;
}

WidthEstimate width_nd(const GeneratorSet& X, std::size_t budget, std::uint64_t seed) {
  const int d = X.dim();
  const double r = X.radius();
  const double rho = kHalfPi - r;
  const std::size_t n = X.size();
  const Mat& G = X.matrix();

  // A point of the polar body K* = {u : <u, y> >= 0 for all y in X^r} written as a
  // normalized nonnegative combination of points w_i in B[x_i, pi/2 - r].
  struct PolarPoint {
    Vec lambda;
    Mat tangents;  // column i: unit tangent at x_i
  };
  auto evaluate = [&](const PolarPoint& p) {
    Vec u = Vec::Zero(d + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (p.lambda[ii] <= 0.0) continue;
      u += p.lambda[ii] * (std::cos(rho) * G.col(ii) + std::sin(rho) * p.tangents.col(ii));
    }
    return Vec(u.normalized());
  };
  auto tangent_away = [&](Eigen::Index i, const Vec& from) {
    return Vec(-geo::tangent_toward(G.col(i), from));
  };
  auto start_point = [&](Eigen::Index i, const Vec& away_from) {
    PolarPoint p{Vec::Zero(static_cast<Eigen::Index>(n)), Mat(d + 1, static_cast<Eigen::Index>(n))};
    p.lambda[i] = 1.0;
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k) p.tangents.col(k) = tangent_away(k, away_from);
    return p;
  };

  WidthEstimate est{kPi, std::nullopt, true, false, 0, seed};
  if (n == 1 && rho <= 0.0) {
    est.value = kPi;  // X^r is a hemisphere
    return est;
  }

  // Starts: pairs (i, j) sorted by decreasing distance; each pair start is the lune
  // tangent to B[x_i, r] and B[x_j, r] on their far sides (width 2r - dist).
  struct Pair {
    double dist;
    Eigen::Index i, j;
  };
  std::vector<Pair> pairs;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(n); ++j) {
      pairs.push_back({geo::dist(G.col(i), G.col(j)), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.dist != b.dist ? a.dist > b.dist : (a.i != b.i ? a.i < b.i : a.j < b.j);
  });

  Rng rng(geo::derive_seed(seed, 21));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  Vec best_u, best_v;
  double best = -1.0;
  const std::size_t n_starts = std::min<std::size_t>(std::max<std::size_t>(pairs.size(), 1), 6);
  const std::size_t per_start = std::max<std::size_t>(budget / n_starts, 1);

  for (std::size_t s = 0; s < n_starts; ++s) {
    PolarPoint pu, pv;
    if (pairs.empty()) {
      // Single generator: opposite tangent points of B[x, pi/2 - r].
      const Mat basis = geo::tangent_basis(G.col(0));
      pu = start_point(0, G.col(0));
      pv = start_point(0, G.col(0));
      pu.tangents.col(0) = basis.col(0);
      pv.tangents.col(0) = -basis.col(0);
    } else {
      const Pair& pr = pairs[s];
      pu = start_point(pr.i, G.col(pr.j));
      pv = start_point(pr.j, G.col(pr.i));
    }
    Vec u = evaluate(pu), v = evaluate(pv);
    double cur = geo::dist(u, v);
    double sigma = 0.05;
    for (std::size_t it = 0; it < per_start; ++it) {
      ++est.iterations;
      const bool move_u = (it % 2 == 0);
      PolarPoint cand = move_u ? pu : pv;
      const auto k = static_cast<Eigen::Index>(pick(rng));
      cand.lambda[k] = std::max(0.0, cand.lambda[k] + sigma * normal(rng));
      if (cand.lambda.sum() <= 0.0) continue;
      if (rho > 0.0) {
        Vec g(d + 1);
        for (int q = 0; q <= d; ++q) g[q] = normal(rng);
        const Vec x = G.col(k);
        g -= x.dot(g) * x;
        Vec t = cand.tangents.col(k) + sigma * g;
        t -= x.dot(t) * x;
        if (t.norm() > 1e-12) cand.tangents.col(k) = t.normalized();
      }
      const Vec cu = move_u ? evaluate(cand) : u;
      const Vec cv = move_u ? v : evaluate(cand);
      const double val = geo::dist(cu, cv);
      if (val > cur && val < kPi) {
        cur = val;
        (move_u ? pu : pv) = cand;
        u = cu;
        v = cv;
        sigma = std::min(sigma * 1.5, 0.5);
      } else {
        sigma = std::max(sigma * 0.97, 1e-9);
      }
    }
    if (cur > best) {
      best = cur;
      best_u = u;
      best_v = v;
    }
  }

  est.value = kPi - best;
  if (best > 0.0 && best < kPi) {
    est.witness.emplace(UnitVector(best_u), UnitVector(best_v));
    // Centers of the half-great-spheres bounding the lune.
    const Vec xc = (best_v - best_v.dot(best_u) * best_u).normalized();
    const Vec yc = (best_u - best_u.dot(best_v) * best_v).normalized();
    est.witness_centers_in_body = dual_membership(UnitVector(xc), X, 1e-6) && dual_membership(UnitVector(yc), X, 1e-6);
  }
  est.certified_lower = est.value >= r - kGeoTol;
  return est;
}

VolumeEstimate mc_volume(const GeneratorSet& X, std::size_t n, std::uint64_t seed, std::size_t n_streams) {
  if (n < 100) throw InputError("mc_volume: need at least 100 samples");
  n_streams = std::max<std::size_t>(n_streams, 1);
  const Vec c = chebyshev_center(X);
  const double r = X.radius();
  const Mat& G = X.matrix();
  const double member_cos = std::cos(r);

  std::vector<std::size_t> hits(n_streams, 0);
  auto run = [&](std::size_t stream) {
    Rng rng(geo::derive_seed(seed, 100 + stream));
    geo::CapSampler cap(c, r);
    const std::size_t count = n / n_streams + (stream < n % n_streams ? 1 : 0);
    Vec y;
    std::size_t h = 0;
    for (std::size_t i = 0; i < count; ++i) {
      cap.sample(rng, y);
      if ((G.transpose() * y).minCoeff() >= member_cos) ++h;
    }
    hits[stream] = h;
  };
  if (n_streams == 1) {
    run(0);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t s = 0; s < n_streams; ++s) workers.emplace_back(run, s);
    for (auto& w : workers) w.join();
  }
  const double total = static_cast<double>(std::accumulate(hits.begin(), hits.end(), std::size_t{0}));
  const double p = total / static_cast<double>(n);
  const double vol = geo::cap_volume(X.dim(), r);
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed, n_streams, vol};
}

double simplex_body_volume_half_pi(int d) { return geo::sphere_volume(d) / std::pow(2.0, d + 1); }

SchrammBound schramm_bound(int d) {
  if (d < 3) throw InputError("schramm_bound: d must be >= 3");
  const double log_factor = 0.5 * (d * std::log(8.0) - std::log(2.0 * kPi * (d + 1)) - d * std::log(d + 4.0));
  const double reference = simplex_body_volume_half_pi(d);
  return {std::exp(log_factor) * reference, reference};
}

}  // namespace wideball
