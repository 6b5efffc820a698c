#include "wideball/harness.hpp"

#include "wideball/json_io.hpp"
#include "wideball/proof_replay.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace wideball {

namespace {

Check make_check(std::string name, double lhs, double rhs, double tol) {
  const double margin = lhs - rhs;
  return {std::move(name), lhs, rhs, margin, margin >= -tol};
}

std::vector<Vec> boundary_points(const ArcBoundary& b, double spacing) {
  std::vector<Vec> pts;
  for (const auto& arc : b.path()) {
    const auto steps = static_cast<std::size_t>(std::ceil(arc.length() / spacing)) + 1;
    for (std::size_t k = 0; k < steps; ++k) pts.push_back(arc.at(static_cast<double>(k) / steps));
  }
  return pts;
}

}  // namespace

std::vector<Vec> fibonacci_sphere(std::size_t n) {
  std::vector<Vec> out;
  out.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    Vec v(3);
    v << rho * std::cos(phi), rho * std::sin(phi), z;
    out.push_back(v);
  }
  return out;
}

OracleResult oracle_area_mc(const GeneratorSet& X, std::size_t n, std::uint64_t seed) {
  if (X.dim() != 2) throw InputError("area oracle needs generators on S^2");
  if (n < 1000) throw InputError("area oracle needs at least 1000 samples");
  const double r = X.radius();
  // The domain sits inside the ball around any generator.
  geo::CapSampler cap(X[0].coords(), r);
  Rng rng(geo::derive_seed(seed, 31));
  const Mat& G = X.matrix();
  const double cos_r = std::cos(r);
  Vec y;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cap.sample(rng, y);
    if ((G.transpose() * y).minCoeff() >= cos_r) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  // All hits or no hits: use one sample's worth of variance so the bound stays positive.
  const double pv = std::clamp(p, 1.0 / static_cast<double>(n), 1.0 - 1.0 / static_cast<double>(n));
  const double se = cap.volume() * std::sqrt(pv * (1.0 - pv) / static_cast<double>(n));
  return {"area", cap.volume() * p, 3.0 * se, "monte-carlo", static_cast<double>(n)};
}

OracleResult oracle_width_grid(const GeneratorSet& X, std::size_t n_dirs) {
  if (X.dim() != 2) throw InputError("width oracle needs generators on S^2");
  if (n_dirs < 16) throw InputError("width oracle needs at least 16 directions");
  const double r = X.radius();
  const ArcBoundary b = boundary_structure(X);
  const double spacing = 2e-3;
  std::vector<Vec> bnd = boundary_points(b, spacing);
  // A hemisphere shares its boundary with the opposite one.
  bnd.push_back(b.interior_point.coords());
  Mat B(3, static_cast<Eigen::Index>(bnd.size()));
  for (std::size_t k = 0; k < bnd.size(); ++k) B.col(static_cast<Eigen::Index>(k)) = bnd[k];

  // A hemisphere may miss a sliver of an arc between two samples; that sliver is
  // at most the sagitta of the chord.
  const double sag = spacing * spacing / (8.0 * std::max(std::sin(r), 1e-3));
  // Accept directions whose hemisphere misses the body by at most one grid step.
  // At r = pi/2 the exact feasible set can be a bare segment that no grid point hits.
  const double h = std::sqrt(4.0 * kPi / static_cast<double>(n_dirs));
  const double slack = std::sin(std::min(h, kHalfPi));
  std::vector<Vec> feasible;
  for (const Vec& u : fibonacci_sphere(n_dirs)) {
    if ((B.transpose() * u).minCoeff() >= -slack) feasible.push_back(u);
  }
  double min_dot = 2.0;
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    for (std::size_t j = i + 1; j < feasible.size(); ++j) min_dot = std::min(min_dot, feasible[i].dot(feasible[j]));
  }
  double width = kPi;
  if (feasible.size() >= 2) width = kPi - std::acos(std::clamp(min_dot, -1.0, 1.0));
  return {"width", width, 2.0 * h + 2.0 * sag + 1e-9, "grid", h};
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double VerificationReport::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool CampaignResult::all_pass() const {
  for (const auto& r : reports) {
    if (!r.pass()) return false;
  }
  for (const auto& c : cells) {
    if (!c.sentinel_is_min) return false;
  }
  return true;
}

VerificationReport verify_instance(const GeneratorSet& X, const CampaignConfig& cfg, std::size_t instance_id,
                                   std::uint64_t seed, bool sentinel) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = X.dim();
  const double r = X.radius();
  const double tol = cfg.tol;
  VerificationReport rep{instance_id, seed, d, r, X.size(), sentinel, "", {}, {}, X, 0.0};
  auto metric = [&](const char* k, double v) { rep.metrics.emplace_back(k, v); };
  auto check = [&](const char* name, double lhs, double rhs) { rep.checks.push_back(make_check(name, lhs, rhs, tol)); };

  const Circumball cb = circumradius_minimax(X.points());
  const double inradius = r - cb.radius;
  const double jung = jung_circumradius(d, r);
  const RHull hull = r_hull(X, cfg.hull_support, geo::derive_seed(seed, 2));
  const WidthEstimate wnd = width_nd(X, cfg.width_budget, geo::derive_seed(seed, 3));

  if (d == 2) {
    const ArcBoundary b = boundary_structure(X);
    const double a = area(b);
    const Width2d w = width_2d(X, b);
    const double a_star = area(boundary_structure(reuleaux_triangle(r)));
    const OracleResult mc = oracle_area_mc(X, cfg.area_samples, geo::derive_seed(seed, 4));
    const OracleResult grid = oracle_width_grid(X, cfg.grid_dirs);
    metric("area", a);
    metric("perimeter", perimeter(b));
    metric("width", w.value);
    metric("inradius", inradius);
    metric("circumradius_of_generators", cb.radius);
    metric("diameter_of_dual_of_dual", hull.hull_diameter);
    metric("width_estimate", wnd.value);
    metric("area_oracle", mc.value);
    metric("width_oracle", grid.value);
    metric("reuleaux_area", a_star);

    check("area_vs_reuleaux", a, a_star);
    check("area_oracle_agreement", cfg.area_sigmas / 3.0 * mc.error_bound, std::abs(a - mc.value));
    check("width_lower_bound", w.value + 1e-6, r);
    check("width_oracle_agreement", grid.error_bound, std::abs(w.value - grid.value));
    check("width_estimate_vs_exact", 1e-4, std::abs(wnd.value - w.value));
    if (sentinel) {
      check("sentinel_width_equals_r", 1e-8, std::abs(w.value - r));
      check("sentinel_area_equality", 1e-6, std::abs(a - a_star));
    }

    ReplayOptions ro;
    ro.tol = tol;
    ro.inclusion_samples = cfg.replay_inclusion;
    ro.overlap_samples = cfg.replay_overlap;
    ro.seed = geo::derive_seed(seed, 5);
    try {
      const ReplayTrace tr = replay_proof(X, ro);
      rep.branch = tr.branch;
      for (const auto& c : tr.checks) {
        rep.checks.push_back({"replay." + c.name, c.lhs, c.rhs, c.lhs - c.rhs, c.pass});
      }
    } catch (const std::exception& e) {
      rep.branch = std::string("error: ") + e.what();
      rep.checks.push_back({"replay.completed", 0.0, 1.0, -1.0, false});
    }
  } else {
    const VolumeEstimate vol = mc_volume(X, cfg.volume_samples, geo::derive_seed(seed, 6));
    metric("volume", vol.mean);
    metric("volume_std_error", vol.std_error);
    metric("width", wnd.value);
    metric("inradius", inradius);
    metric("circumradius_of_generators", cb.radius);
    metric("diameter_of_dual_of_dual", hull.hull_diameter);
    // The inscribed ball lies inside the body.
    check("volume_vs_inball", vol.mean + 5.0 * vol.std_error, geo::cap_volume(d, inradius));
    if (sentinel && std::abs(r - kHalfPi) < 1e-12) {
      check("sentinel_volume_reference", 3.0 * vol.std_error, std::abs(vol.mean - simplex_body_volume_half_pi(d)));
    }
  }

  check("width_estimate_lower_bound", wnd.value + 1e-3, r);
  check("inradius_vs_jung", inradius, r - jung - 1e-8);
  check("hull_diameter", r + 5e-3, hull.hull_diameter);
  check("width_plus_hull_diameter", wnd.value + hull.hull_diameter + 1e-2, 2.0 * r);
  if (sentinel) {
    check("sentinel_inradius_equality", 1e-8, std::abs(inradius - (r - jung)));
    check("sentinel_hull_diameter", 5e-3, std::abs(hull.hull_diameter - r));
  }

  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  if (cfg.dims.empty() || cfg.radii.empty() || cfg.instances == 0) throw InputError("campaign config is empty");
  for (int d : cfg.dims) {
    if (d < 2) throw InputError("campaign dimension must be >= 2");
  }
  for (double r : cfg.radii) {
    if (!(r > 0.0) || r > kHalfPi + kAlgTol) throw InputError("campaign radius must lie in (0, pi/2]");
  }
  if (cfg.max_generators == 0) throw InputError("max_generators must be positive");

  struct Job {
    int d;
    double r;
    std::size_t cell;
    std::size_t index;
  };
  std::vector<Job> jobs;
  std::size_t cell = 0;
  for (int d : cfg.dims) {
    for (double r : cfg.radii) {
      for (std::size_t i = 0; i < cfg.instances; ++i) jobs.push_back({d, r, cell, i});
      ++cell;
    }
  }

  CampaignResult res;
  res.reports.resize(jobs.size(), VerificationReport{0, 0, 0, 0.0, 0, false, "", {}, {}, reuleaux_triangle(1.0), 0.0});
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& job = jobs[k];
      const std::uint64_t seed = geo::derive_seed(cfg.seed, 1000003ULL * job.cell + job.index);
      const bool sentinel = job.index == 0;
      GeneratorSet X = sentinel ? (job.d == 2 ? reuleaux_triangle(job.r) : regular_simplex(job.d, job.r).generators())
                                : sample_wide_generator(job.d, job.r, 1 + (seed >> 11) % cfg.max_generators, seed);
      res.reports[k] = verify_instance(X, cfg, k, seed, sentinel);
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(cfg.threads, jobs.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t k = 0; k < jobs.size();) {
    const Job& head = jobs[k];
    CellSummary cs{head.d, head.r, 0, 0, std::numeric_limits<double>::infinity(), 0, 0.0, false};
    const char* key = head.d == 2 ? "area" : "volume";
    std::size_t j = k;
    for (; j < jobs.size() && jobs[j].cell == head.cell; ++j) {
      const auto& rep = res.reports[j];
      ++cs.instances;
      if (!rep.pass()) ++cs.failures;
      const double v = rep.metric(key);
      if (v < cs.min_size) {
        cs.min_size = v;
        cs.argmin = rep.instance_id;
      }
      if (rep.sentinel) cs.sentinel_size = v;
    }
    // Volumes in d >= 3 are Monte-Carlo estimates: allow their noise.
    double slack = 1e-6;
    if (head.d > 2) slack = 5.0 * res.reports[k].metric("volume_std_error") + 5.0 * res.reports[cs.argmin].metric("volume_std_error");
    cs.sentinel_is_min = cs.sentinel_size <= cs.min_size + slack;
    res.cells.push_back(cs);
    k = j;
  }
  return res;
}

std::string reports_to_jsonl(const std::vector<VerificationReport>& reports, bool include_runtime) {
  std::ostringstream os;
  for (const auto& r : reports) {
    io::Json metrics = io::Json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    io::Json checks = io::Json::object();
    for (const auto& c : r.checks) {
      checks[c.name] = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"pass", c.pass}};
    }
    io::Json j{{"instance_id", r.instance_id},
               {"seed", r.seed},
               {"d", r.d},
               {"r", r.r},
               {"n_generators", r.n_generators},
               {"sentinel", r.sentinel},
               {"pass", r.pass()}};
    if (!r.branch.empty()) j["branch"] = r.branch;
    j["metrics"] = metrics;
    j["checks"] = checks;
    j["generators"] = io::to_json(r.generators);
    if (include_runtime) j["runtime_ms"] = r.runtime_ms;
    os << j.dump() << '\n';
  }
  return os.str();
}

std::string summary_to_csv(const std::vector<CellSummary>& cells) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "d,r,instances,failures,min_size,argmin,sentinel_size,sentinel_is_min\n";
  for (const auto& c : cells) {
    os << c.d << ',' << c.r << ',' << c.instances << ',' << c.failures << ',' << c.min_size << ',' << c.argmin << ','
       << c.sentinel_size << ',' << (c.sentinel_is_min ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << std::setprecision(17);
  std::vector<std::string> keys;
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.metrics) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
  }
  os << "instance_id,seed,d,r,n_generators,sentinel,pass,failed_checks";
  for (const auto& k : keys) os << ',' << k;
  os << '\n';
  for (const auto& r : reports) {
    std::string failed;
    for (const auto& c : r.checks) {
      if (!c.pass) failed += (failed.empty() ? "" : ";") + c.name;
    }
    os << r.instance_id << ',' << r.seed << ',' << r.d << ',' << r.r << ',' << r.n_generators << ','
       << (r.sentinel ? 1 : 0) << ',' << (r.pass() ? 1 : 0) << ',' << failed;
    for (const auto& k : keys) {
      const double v = r.metric(k);
      os << ',';
      if (!std::isnan(v)) os << v;
    }
    os << '\n';
  }
  return os.str();
}

CampaignConfig campaign_config_from_json(const std::string& text) {
  CampaignConfig cfg;
  io::Json j;
  try {
    j = io::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("campaign config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("campaign config must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "dims") cfg.dims = val.get<std::vector<int>>();
      else if (key == "radii") cfg.radii = val.get<std::vector<double>>();
      else if (key == "instances") cfg.instances = val.get<std::size_t>();
      else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "max_generators") cfg.max_generators = val.get<std::size_t>();
      else if (key == "tol") cfg.tol = val.get<double>();
      else if (key == "area_samples") cfg.area_samples = val.get<std::size_t>();
      else if (key == "area_sigmas") cfg.area_sigmas = val.get<double>();
      else if (key == "grid_dirs") cfg.grid_dirs = val.get<std::size_t>();
      else if (key == "hull_support") cfg.hull_support = val.get<std::size_t>();
      else if (key == "width_budget") cfg.width_budget = val.get<std::size_t>();
      else if (key == "volume_samples") cfg.volume_samples = val.get<std::size_t>();
      else if (key == "replay_inclusion") cfg.replay_inclusion = val.get<std::size_t>();
      else if (key == "replay_overlap") cfg.replay_overlap = val.get<std::size_t>();
      else if (key == "threads") cfg.threads = val.get<std::size_t>();
      else throw InputError("campaign config: unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("campaign config: ") + e.what());
  }
  return cfg;
}

double tolerance_from_env(double fallback) {
  const char* s = std::getenv("SPHERE_TOL");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string("SPHERE_TOL is not a positive number: ") + s);
  }
  return v;
}

}  // namespace wideball
