#pragma once

// Experiment harness: builds the stream for an experiment id, runs each
// (algorithm, seed) cell against its comparator and writes the results.
//
// Experiments and their rosters:
//   toy          clipped, mahdavi               linear losses, L1 constraint
//   dsm          clipped, strong, mahdavi       doubly-stochastic approximation
//   dispatch     clipped, strong, mahdavi       economic dispatch
//   pca          adaptive, static, ftl          piecewise-stationary PCA
//   tracking     discounted, classic, newton, meta   quadratics with jumps
//   adversarial  discounted, classic            +-2 sigma quadratics

#include "oco/core.hpp"
#include "oco/streams.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oco {

struct ExperimentConfig {
  std::string experiment;
  long horizon = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> algorithms;
  std::string out_dir;
  int jobs = 1;

  double beta = 0.5;   // clipped step exponent
  double kappa = 0.5;  // clipped penalty trade-off
  std::optional<double> gamma;  // overrides the tuned discount factor
  int dim = 5;                  // dsm matrix size / tracking dimension
  double sigma_level = 1.0;     // adversarial
  double pca_eta = 1.0;
  double pca_alpha = 1e-5;
  int pca_n = 20;
  int pca_k = 2;
  int pca_rank = 2;
  int pca_segments = 3;
  DispatchModel dispatch;
  std::vector<double> demand;  // empty: synthetic demand per seed

  void validate() const;
};

const std::vector<std::string>& experiment_ids();
std::vector<std::string> default_roster(const std::string& experiment);
long default_horizon(const std::string& experiment);

/// A config with the experiment's default horizon and roster and seed 1.
ExperimentConfig default_config(const std::string& experiment);

struct TraceRow {
  long t = 0;
  double loss = 0.0;
  double cum_loss = 0.0;
  double regret = 0.0;
  double violation_signed = 0.0;
  double violation_clipped = 0.0;
  double step_size = 0.0;
};

struct CellResult {
  std::string algorithm;
  std::uint64_t seed = 0;
  long horizon = 0;
  std::vector<TraceRow> rows;
  double cumulative_loss = 0.0;
  double comparator_loss = 0.0;
  double regret = 0.0;
  double clipped_sum = 0.0;
  double clipped_square_sum = 0.0;
  double signed_sum = 0.0;
  double max_clip = 0.0;
  Vector comparator;  // static comparator when the experiment has one
  double runtime_ms = 0.0;
};

/// Runs a single cell without writing anything.
CellResult run_cell(const ExperimentConfig& config, const std::string& algorithm, std::uint64_t seed);

struct ExperimentResult {
  std::vector<CellResult> cells;  // roster order, seeds inner
  std::vector<std::string> files;
};

/// Runs every cell (on `jobs` threads) and, when out_dir is set, writes
///   <exp>_<algo>_seed<seed>.csv  per-round trace
///   <exp>_summary.csv            one row per cell, deterministic
///   <exp>_timing.csv             wall-clock runtime per cell
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Shortest round-trip decimal form used in every CSV.
std::string format_number(double x);

}  // namespace oco
