#pragma once

// Shared domain types for the online learners: loss oracles, per-round traces
// and regret / constraint-violation accounting.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oco {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot produce a trustworthy result
/// (loss of positive definiteness, non-finite values, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input file cannot be read or an output cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

/// Problem constants consumed by the step-size and schedule formulas.
struct CurvatureProfile {
  double grad_bound = 1.0;  // G, bound on the gradient norm
  double diameter = 1.0;    // D, normalized so that D >= 1
  double radius = 1.0;      // R, S is contained in the R-ball
  std::optional<double> strong_convexity;  // ell
  std::optional<double> smoothness;        // u
  std::optional<double> exp_concavity;     // alpha
  int constraint_count = 1;                // m

  /// Throws InvalidArgument when any invariant is broken.
  void validate() const;

  double ell() const;
  double u() const;
  double alpha() const;
};

/// A convex constraint g(x) <= 0 with a subgradient oracle.
struct Constraint {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;
};

/// One round of the online game: first/second-order loss oracle and the
/// constraints active at this round.
struct LossRound {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;  // empty when unavailable
  std::vector<Constraint> constraints;

  bool has_hessian() const { return static_cast<bool>(hessian); }
  /// g_i(x) for every constraint, signed.
  Vector constraint_values(const Vector& x) const;
};

struct RoundTrace {
  std::int64_t round_index = 0;
  Vector iterate;
  double loss = 0.0;
  Vector violations;  // signed g_i(theta_t)
  double step_size = 0.0;
};

/// Append-only trace that enforces consecutive round indices.
class Trace {
 public:
  void append(RoundTrace record);
  const std::vector<RoundTrace>& rounds() const { return rounds_; }
  std::size_t size() const { return rounds_.size(); }
  bool empty() const { return rounds_.empty(); }
  const RoundTrace& operator[](std::size_t i) const { return rounds_[i]; }

 private:
  std::vector<RoundTrace> rounds_;
};

struct RegretReport {
  double cumulative_loss = 0.0;
  double comparator_loss = 0.0;
  double regret = 0.0;
  std::optional<double> path_length;
};

struct ViolationMetrics {
  Vector clipped_sum;
  Vector clipped_square_sum;
  Vector signed_sum;
  Vector max_single_step;
};

RegretReport static_regret(std::span<const RoundTrace> trace, const Vector& comparator,
                           std::span<const LossRound> losses);

RegretReport dynamic_regret(std::span<const RoundTrace> trace,
                            std::span<const Vector> comparators,
                            std::span<const LossRound> losses);

/// Sum of Euclidean distances between consecutive points.
double path_length(std::span<const Vector> points);

ViolationMetrics violation_metrics(std::span<const RoundTrace> trace);

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

bool all_finite(const Vector& v);

}  // namespace oco
