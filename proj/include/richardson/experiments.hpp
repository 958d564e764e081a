#ifndef RICHARDSON_EXPERIMENTS_HPP
#define RICHARDSON_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "richardson/coupling.hpp"
#include "richardson/engine.hpp"

namespace richardson {

struct EstimateResult {
  int dim = 2;
  double lambda = 1.0;
  std::int64_t radius = 0;
  std::uint64_t n_reps = 0;
  std::uint64_t n_coexist = 0;
  std::uint64_t n_type1_dead = 0;
  std::uint64_t n_type2_dead = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t master_seed = 0;
  std::string config_digest;
  bool fertile = true;
  std::string label;  // pair name from a catalog, empty otherwise
};

/// 95% Wilson score interval for k successes out of n (n = 0 gives [0, 1]).
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

/// Stable 16-hex-digit FNV-1a digest of (dim, lambda, xi1, xi2).
std::string config_digest(const ModelConfig& config);

/// Runs to radius R with death detection for both types. Returns kCoexist,
/// kType1Dead or kType2Dead. Both initial sets must be nonempty.
Outcome coexistence_trial(const ModelConfig& config, std::int64_t radius, std::uint64_t seed);

/// n_reps trials with seeds derive_seed(master_seed, i). Throws
/// std::invalid_argument on an infertile pair unless allow_infertile.
EstimateResult estimate(const ModelConfig& config, std::int64_t radius, std::uint64_t n_reps,
                        std::uint64_t master_seed, unsigned threads, bool allow_infertile = false);

struct NamedPair {
  std::string name;
  SiteSet xi1;
  SiteSet xi2;
};

struct SweepSpec {
  int dim = 2;
  std::vector<double> lambdas;
  std::vector<NamedPair> pairs;
  std::vector<std::int64_t> radii;
  std::uint64_t n_reps = 0;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  bool allow_infertile = false;
};

/// One EstimateResult per (pair, lambda, radius) cell. Every cell reuses the
/// same per-replica seeds.
std::vector<EstimateResult> sweep(const SweepSpec& spec);

/// Inclusive lambda grid "lo:hi:step".
std::vector<double> lambda_grid(double lo, double hi, double step);

void write_csv(std::ostream& os, const std::vector<EstimateResult>& rows);
std::string csv_header();
std::string csv_row(const EstimateResult& r);

struct Lemma1SuiteOptions {
  std::uint64_t n_runs = 0;
  int dim = 2;
  double lambda = 0.6;
  Box window;
  std::uint64_t horizon = 2000;  // merged events per run
  std::uint64_t master_seed = 0;
  /// Only draw pairs with a start site in ∂ζ ∩ ζ_1 ∩ ζ_1' and check path transfer.
  bool require_path_start = false;
  /// Negative control: drive the two processes with different seeds.
  bool mismatched_seeds = false;
};

struct Lemma1RunRecord {
  ModelConfig a;
  ModelConfig b;
  bool inclusions_pass = true;
  std::size_t checks = 0;
  bool path_checked = false;
  bool path_pass = true;
  std::size_t path_edges = 0;
};

struct Lemma1Summary {
  std::uint64_t n_runs = 0;
  std::uint64_t n_inclusion_pass = 0;
  std::uint64_t n_path_runs = 0;
  std::uint64_t n_path_pass = 0;
  std::vector<Lemma1RunRecord> runs;

  bool all_pass() const { return n_inclusion_pass == n_runs && n_path_pass == n_path_runs; }
};

/// Draws a precondition-satisfying pair of configurations on the window.
std::pair<ModelConfig, ModelConfig> draw_lemma1_pair(const Lemma1SuiteOptions& opts, std::uint64_t seed);

Lemma1Summary lemma1_suite(const Lemma1SuiteOptions& opts);

}  // namespace richardson

#endif  // RICHARDSON_EXPERIMENTS_HPP
