#pragma once

// Projected online gradient descent with forgetting-factor step sizes.

#include "oco/core.hpp"
#include "oco/geometry.hpp"

namespace oco {

enum class StepRule {
  DiscountedRls,          // (1-g)/(1-g^t)
  SmoothStronglyConvex,   // (1-g)/(ell (g-g^t) + u (1-g))
  StronglyConvex,         // (1-g)/(ell (1-g^t))
  Classic,                // 1/(ell t)
};

const char* to_string(StepRule rule);

struct GdState {
  Vector iterate;
  long round = 1;
  double gamma = 0.5;
  StepRule rule = StepRule::DiscountedRls;

  static GdState start(Vector initial, double gamma, StepRule rule);
};

double step_size(const GdState& state, const CurvatureProfile& profile);

/// theta_{t+1} = Proj_S(theta_t - eta_t * gradient); advances the round.
GdState gd_round(const GdState& state, const Vector& gradient, const FeasibleSet& set,
                 const CurvatureProfile& profile);

/// gamma = 1 - T^{-beta}.
double gamma_for_beta(long horizon, double beta);

/// gamma = 1 - 1/2 sqrt(max{V, ln^2 T / T} / (2 D T)).
double gamma_for_path(long horizon, double diameter, double path_budget);

/// A gradient-descent learner bundled with its set and constants.
class GdLearner {
 public:
  GdLearner(GdState state, FeasibleSet set, CurvatureProfile profile);

  const Vector& iterate() const { return state_.iterate; }
  const GdState& state() const { return state_; }
  double current_step() const { return step_size(state_, profile_); }
  void update(const Vector& gradient) { state_ = gd_round(state_, gradient, set_, profile_); }

 private:
  GdState state_;
  FeasibleSet set_;
  CurvatureProfile profile_;
};

}  // namespace oco
