#include "oco/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oco {

namespace {

double average_value(std::span<const LossRound> losses, const Vector& x) {
  double total = 0.0;
  for (const auto& r : losses) total += r.value(x);
  return total / static_cast<double>(losses.size());
}

Vector average_gradient(std::span<const LossRound> losses, const Vector& x) {
  Vector total = Vector::Zero(x.size());
  for (const auto& r : losses) total += r.gradient(x);
  return total / static_cast<double>(losses.size());
}

void check_interval(const Interval& iv, std::size_t horizon) {
  require(iv.first >= 1 && iv.first <= iv.second && static_cast<std::size_t>(iv.second) <= horizon,
          "interval must satisfy 1 <= first <= last <= T");
}

}  // namespace

OracleResult offline_oracle(std::span<const LossRound> losses, const FeasibleSet& set, Eigen::Index dim,
                            double tolerance, long max_iterations) {
  require(!losses.empty(), "oracle needs at least one loss");
  require(tolerance > 0.0 && max_iterations >= 1, "oracle tolerance and iteration cap must be positive");

  OracleResult out;
  Vector x = project(set, center_of(set, dim));
  double fx = average_value(losses, x);
  double step = 1.0;
  for (long it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    const Vector g = average_gradient(losses, x);
    if (!g.allFinite()) throw NumericalError("oracle gradient is not finite");
    Vector next;
    double fnext = 0.0;
    step = std::min(step * 2.0, 1e12);
    for (int shrink = 0; shrink < 200; ++shrink) {
      next = project(set, x - step * g);
      fnext = average_value(losses, next);
      const Vector move = next - x;
      if (fnext <= fx + g.dot(move) + move.squaredNorm() / (2.0 * step) + 1e-15 * std::abs(fx)) break;
      step *= 0.5;
    }
    const double movement = (next - x).norm();
    x = std::move(next);
    fx = fnext;
    if (movement < tolerance) {
      out.converged = true;
      break;
    }
  }
  out.point = x;
  out.average_loss = fx;
  return out;
}

std::vector<double> interval_regret(std::span<const RoundTrace> trace, std::span<const LossRound> losses,
                                    std::span<const Interval> intervals, const FeasibleSet& set,
                                    double tolerance) {
  require(trace.size() == losses.size(), "trace and loss sequence lengths differ");
  require(!trace.empty(), "trace is empty");
  const Eigen::Index dim = trace.front().iterate.size();
  std::vector<double> out;
  for (const auto& iv : intervals) {
    check_interval(iv, trace.size());
    const std::size_t first = static_cast<std::size_t>(iv.first - 1);
    const std::size_t count = static_cast<std::size_t>(iv.second - iv.first + 1);
    double learner = 0.0;
    for (std::size_t t = first; t < first + count; ++t) learner += trace[t].loss;
    const OracleResult best = offline_oracle(losses.subspan(first, count), set, dim, tolerance);
    out.push_back(learner - best.average_loss * static_cast<double>(count));
  }
  return out;
}

double best_projection_loss(std::span<const Vector> xs, int k) {
  require(!xs.empty(), "need at least one data point");
  const Eigen::Index n = xs.front().size();
  require(k >= 1 && k < n, "target rank must satisfy 1 <= k < n");
  Matrix C = Matrix::Zero(n, n);
  for (const auto& x : xs) C.noalias() += x * x.transpose();
  const SymmetricEigen eig = symmetric_eigen(C);
  return eig.values.head(n - k).sum();
}

std::vector<double> pca_interval_regret(std::span<const double> losses, std::span<const Vector> xs,
                                        std::span<const Interval> intervals, int k) {
  require(losses.size() == xs.size(), "loss and data lengths differ");
  std::vector<double> out;
  for (const auto& iv : intervals) {
    check_interval(iv, xs.size());
    const std::size_t first = static_cast<std::size_t>(iv.first - 1);
    const std::size_t count = static_cast<std::size_t>(iv.second - iv.first + 1);
    double learner = 0.0;
    for (std::size_t t = first; t < first + count; ++t) learner += losses[t];
    out.push_back(learner - best_projection_loss(xs.subspan(first, count), k));
  }
  return out;
}

}  // namespace oco
