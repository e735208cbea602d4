#pragma once

// Hindsight comparators used for regret evaluation.

#include "oco/core.hpp"
#include "oco/geometry.hpp"

#include <utility>
#include <vector>

namespace oco {

struct OracleResult {
  Vector point;
  double average_loss = 0.0;
  long iterations = 0;
  bool converged = false;
};

/// Minimizes the average of the losses over `set` by projected gradient
/// descent with backtracking, stopping once consecutive iterates move less
/// than `tolerance` or after `max_iterations`.
OracleResult offline_oracle(std::span<const LossRound> losses, const FeasibleSet& set, Eigen::Index dim,
                            double tolerance = 1e-8, long max_iterations = 100000);

/// Inclusive, one-based round interval [first, last].
using Interval = std::pair<long, long>;

/// Per interval: sum of the recorded losses minus the oracle's loss on it.
std::vector<double> interval_regret(std::span<const RoundTrace> trace, std::span<const LossRound> losses,
                                    std::span<const Interval> intervals, const FeasibleSet& set,
                                    double tolerance = 1e-8);

/// Smallest total compression loss sum_t |x_t - P x_t|^2 over rank-k
/// projections P: the sum of the n - k smallest eigenvalues of sum_t x_t x_t^T.
double best_projection_loss(std::span<const Vector> xs, int k);

/// Interval regret of a PCA learner given its per-round losses.
std::vector<double> pca_interval_regret(std::span<const double> losses, std::span<const Vector> xs,
                                        std::span<const Interval> intervals, int k);

}  // namespace oco
