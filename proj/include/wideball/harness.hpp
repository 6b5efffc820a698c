#pragma once

// Brute-force oracles and verification campaigns over random wide bodies.

#include "wideball/ball_body.hpp"
#include "wideball/disk_polygon.hpp"
#include "wideball/sphere_core.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wideball {

struct OracleResult {
  std::string quantity;
  double value;
  double error_bound;
  std::string method;  // "grid" or "monte-carlo"
  /// Sample count for Monte-Carlo, grid spacing for grids.
  double resolution;
};

/// Hit-or-miss area inside B[x_0, r] (x_0 the first generator), with a 3 sigma bound.
/// Throws InputError for n < 1000.
OracleResult oracle_area_mc(const GeneratorSet& X, std::size_t n, std::uint64_t seed);

/// pi minus the largest distance between two grid directions whose hemispheres
/// contain a dense boundary sample of the domain. Directions form a Fibonacci
/// lattice of n_dirs points.
OracleResult oracle_width_grid(const GeneratorSet& X, std::size_t n_dirs);

/// Fibonacci lattice on S^2.
std::vector<Vec> fibonacci_sphere(std::size_t n);

struct Check {
  std::string name;
  double lhs;
  double rhs;
  /// lhs - rhs; the check passes iff margin >= -tol.
  double margin;
  bool pass;
};

struct VerificationReport {
  std::size_t instance_id;
  std::uint64_t seed;
  int d;
  double r;
  std::size_t n_generators;
  bool sentinel;
  std::string branch;  // proof-replay branch, d = 2 only
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Check> checks;
  GeneratorSet generators;
  double runtime_ms;

  bool pass() const;
  double metric(const std::string& key) const;
};

struct CampaignConfig {
  std::vector<int> dims{2};
  std::vector<double> radii{0.3, 0.7, kHalfPi};
  std::size_t instances = 200;
  std::uint64_t seed = 20240601;
  std::size_t max_generators = 24;
  double tol = kGeoTol;

  std::size_t area_samples = 20000;
  double area_sigmas = 5.0;
  std::size_t grid_dirs = 6000;
  std::size_t hull_support = 300;
  std::size_t width_budget = 1500;
  std::size_t volume_samples = 100000;
  std::size_t replay_inclusion = 2000;
  std::size_t replay_overlap = 4000;
  std::size_t threads = 1;
};

struct CellSummary {
  int d;
  double r;
  std::size_t instances;
  std::size_t failures;
  /// Area for d = 2, Monte-Carlo volume otherwise.
  double min_size;
  std::size_t argmin;
  double sentinel_size;
  bool sentinel_is_min;
};

struct CampaignResult {
  std::vector<VerificationReport> reports;
  std::vector<CellSummary> cells;
  bool all_pass() const;
};

/// Instance 0 of every cell is a sentinel: the Reuleaux triangle for d = 2 and the
/// regular simplex body for d >= 3. Reports come back ordered by instance id.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// Single-instance verification with the campaign's checks.
VerificationReport verify_instance(const GeneratorSet& X, const CampaignConfig& cfg, std::size_t instance_id,
                                   std::uint64_t seed, bool sentinel);

/// One JSON object per line. runtime_ms is written only when include_runtime is set.
std::string reports_to_jsonl(const std::vector<VerificationReport>& reports, bool include_runtime = true);
std::string summary_to_csv(const std::vector<CellSummary>& cells);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// Parse a campaign config from JSON text; unknown keys are an InputError.
CampaignConfig campaign_config_from_json(const std::string& text);

/// ε_geo, overridden by the SPHERE_TOL environment variable when set.
double tolerance_from_env(double fallback = kGeoTol);

}  // namespace wideball
