#pragma once

// Discounted online Newton step.
//
//   P_t = gamma P_{t-1} + grad grad^T      (quasi-Newton)
//   P_t = gamma P_{t-1} + H_t              (full Newton)
//   theta_{t+1} = Proj^{P_t}_S(theta_t - (1/eta) P_t^{-1} grad)
//
// with P_0 = epsilon I. gamma = 1 recovers the undiscounted method.

#include "oco/core.hpp"
#include "oco/geometry.hpp"

#include <optional>

namespace oco {

enum class NewtonMode { Quasi, Full };

enum class NewtonCase {
  ExpConcave,            // eta <= 1/2 min{1/(4GD), alpha}, quasi-Newton
  StronglyConvexSmooth,  // eta <= ell/u, full Newton
  QuadraticLike,         // eta <= 1, full Newton
};

struct NewtonState {
  Vector iterate;
  Matrix P;
  Matrix P_inverse;
  long round = 1;
  double gamma = 1.0;
  double eta = 1.0;
  double epsilon = 1.0;
  NewtonMode mode = NewtonMode::Quasi;
  long rounds_since_refactor = 0;

  static NewtonState start(Vector initial, double gamma, double eta, double epsilon, NewtonMode mode);
};

/// Quasi mode rebuilds P^{-1} from P after this many rank-one updates.
inline constexpr long kRefactorInterval = 512;

NewtonState newton_round(const NewtonState& state, const Vector& gradient,
                         const std::optional<Matrix>& hessian, const FeasibleSet& set);

/// Largest admissible eta for the given curvature case.
double eta_for_case(const CurvatureProfile& profile, NewtonCase which);

/// epsilon = 1/(rho^2 D^2) with rho = 1/2 min{1/(4GD), alpha}.
double practical_epsilon(const CurvatureProfile& profile);

/// (gamma P + g g^T)^{-1} from P^{-1} by the matrix inversion lemma.
Matrix inverse_rank_one_update(const Matrix& P_inverse, const Vector& gradient, double gamma);

class NewtonLearner {
 public:
  NewtonLearner(NewtonState state, FeasibleSet set);

  const Vector& iterate() const { return state_.iterate; }
  const NewtonState& state() const { return state_; }
  void update(const Vector& gradient, const std::optional<Matrix>& hessian = std::nullopt) {
    state_ = newton_round(state_, gradient, hessian, set_);
  }

 private:
  NewtonState state_;
  FeasibleSet set_;
};

}  // namespace oco
