#include "oco/gd.hpp"

#include <cmath>

namespace oco {

const char* to_string(StepRule rule) {
  switch (rule) {
    case StepRule::DiscountedRls: return "discounted-rls";
    case StepRule::SmoothStronglyConvex: return "smooth-strongly-convex";
    case StepRule::StronglyConvex: return "strongly-convex";
    case StepRule::Classic: return "classic";
  }
  return "unknown";
}

GdState GdState::start(Vector initial, double gamma, StepRule rule) {
  if (rule != StepRule::Classic) require(gamma > 0.0 && gamma < 1.0, "discount factor must lie in (0,1)");
  return GdState{std::move(initial), 1, gamma, rule};
}

double step_size(const GdState& state, const CurvatureProfile& profile) {
  const double g = state.gamma;
  const double t = static_cast<double>(state.round);
  if (state.rule != StepRule::Classic) require(g > 0.0 && g < 1.0, "discount factor must lie in (0,1)");
  const double g_t = std::pow(g, t);
  switch (state.rule) {
    case StepRule::DiscountedRls:
      return (1.0 - g) / (1.0 - g_t);
    case StepRule::SmoothStronglyConvex:
      return (1.0 - g) / (profile.ell() * (g - g_t) + profile.u() * (1.0 - g));
    case StepRule::StronglyConvex:
      return (1.0 - g) / (profile.ell() * (1.0 - g_t));
    case StepRule::Classic:
      return 1.0 / (profile.ell() * t);
  }
  throw InvalidArgument("unknown step rule");
}

GdState gd_round(const GdState& state, const Vector& gradient, const FeasibleSet& set,
                 const CurvatureProfile& profile) {
  require(gradient.size() == state.iterate.size(), "gradient dimension differs from iterate");
  if (!gradient.allFinite()) throw NumericalError("non-finite gradient");
  GdState next = state;
  next.iterate = project(set, state.iterate - step_size(state, profile) * gradient);
  ++next.round;
  return next;
}

double gamma_for_beta(long horizon, double beta) {
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  require(horizon >= 2, "horizon must be at least 2");
  return 1.0 - std::pow(static_cast<double>(horizon), -beta);
}

double gamma_for_path(long horizon, double diameter, double path_budget) {
  require(horizon >= 2, "horizon must be at least 2");
  require(diameter > 0.0, "diameter must be positive");
  require(path_budget >= 0.0, "path budget must be non-negative");
  const double T = static_cast<double>(horizon);
  const double log_t = std::log(T);
  const double floor = log_t * log_t / T;
  return 1.0 - 0.5 * std::sqrt(std::max(path_budget, floor) / (2.0 * diameter * T));
}

GdLearner::GdLearner(GdState state, FeasibleSet set, CurvatureProfile profile)
    : state_(std::move(state)), set_(std::move(set)), profile_(std::move(profile)) {}

}  // namespace oco
