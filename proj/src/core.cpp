#include "oco/core.hpp"

#include <cmath>

namespace oco {

void CurvatureProfile::validate() const {
  require(grad_bound > 0.0, "grad bound G must be positive");
  require(diameter >= 1.0, "diameter D must be at least 1");
  require(radius > 0.0, "radius R must be positive");
  if (strong_convexity) require(*strong_convexity > 0.0, "strong convexity must be positive");
  if (smoothness) require(*smoothness > 0.0, "smoothness must be positive");
  if (exp_concavity) require(*exp_concavity > 0.0, "exp-concavity must be positive");
  if (strong_convexity && smoothness)
    require(*strong_convexity <= *smoothness, "strong convexity exceeds smoothness");
  require(constraint_count >= 1, "constraint count must be positive");
}

double CurvatureProfile::ell() const {
  require(strong_convexity.has_value(), "strong convexity constant required");
  return *strong_convexity;
}

double CurvatureProfile::u() const {
  require(smoothness.has_value(), "smoothness constant required");
  return *smoothness;
}

double CurvatureProfile::alpha() const {
  require(exp_concavity.has_value(), "exp-concavity constant required");
  return *exp_concavity;
}

Vector LossRound::constraint_values(const Vector& x) const {
  Vector g(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t i = 0; i < constraints.size(); ++i)
    g(static_cast<Eigen::Index>(i)) = constraints[i].value(x);
  return g;
}

void Trace::append(RoundTrace record) {
  const std::int64_t expected = rounds_.empty() ? record.round_index : rounds_.back().round_index + 1;
  require(record.round_index == expected, "trace round index must increase by one");
  rounds_.push_back(std::move(record));
}

bool all_finite(const Vector& v) { return v.allFinite(); }

RegretReport static_regret(std::span<const RoundTrace> trace, const Vector& comparator,
                           std::span<const LossRound> losses) {
  require(trace.size() == losses.size(), "trace and losses differ in length");
  RegretReport report;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    report.cumulative_loss += trace[t].loss;
    report.comparator_loss += losses[t].value(comparator);
  }
  report.regret = report.cumulative_loss - report.comparator_loss;
  report.path_length = 0.0;
  return report;
}

RegretReport dynamic_regret(std::span<const RoundTrace> trace,
                            std::span<const Vector> comparators,
                            std::span<const LossRound> losses) {
  require(trace.size() == losses.size() && trace.size() == comparators.size(),
          "trace, comparators and losses differ in length");
  RegretReport report;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    report.cumulative_loss += trace[t].loss;
    report.comparator_loss += losses[t].value(comparators[t]);
  }
  report.regret = report.cumulative_loss - report.comparator_loss;
  report.path_length = comparators.empty() ? 0.0 : path_length(comparators);
  return report;
}

double path_length(std::span<const Vector> points) {
  require(!points.empty(), "path length of an empty sequence");
  double total = 0.0;
  for (std::size_t t = 1; t < points.size(); ++t) total += (points[t] - points[t - 1]).norm();
  return total;
}

ViolationMetrics violation_metrics(std::span<const RoundTrace> trace) {
  const Eigen::Index m = trace.empty() ? 0 : trace.front().violations.size();
  ViolationMetrics out{Vector::Zero(m), Vector::Zero(m), Vector::Zero(m), Vector::Zero(m)};
  for (const RoundTrace& r : trace) {
    require(r.violations.size() == m, "ragged violation vectors");
    for (Eigen::Index i = 0; i < m; ++i) {
      const double g = r.violations(i);
      const double clipped = positive_part(g);
      out.clipped_sum(i) += clipped;
      out.clipped_square_sum(i) += clipped * clipped;
      out.signed_sum(i) += g;
      out.max_single_step(i) = std::max(out.max_single_step(i), clipped);
    }
  }
  return out;
}

}  // namespace oco
