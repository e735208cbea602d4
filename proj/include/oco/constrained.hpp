#pragma once

// Online convex optimization with clipped long-term constraints.
//
// The learner plays theta_t in a simple ball/box B and is charged both the
// loss f_t(theta_t) and the violations [g_i(theta_t)]_+. The augmented
// Lagrangian f + sum_i lambda_i [g_i]_+ - (phi/2) |lambda|^2 is maximized in
// closed form over lambda, giving lambda = [g(theta)]_+ / phi, and minimized
// by one projected subgradient step over theta.

#include "oco/core.hpp"
#include "oco/geometry.hpp"

namespace oco {

struct ClippedState {
  Vector iterate;
  Vector lambda;  // one multiplier per constraint
  long round = 1;
  double last_step = 0.0;
  bool multipliers_ready = false;

  /// theta_1 at the centre of B, lambda = 0.
  static ClippedState start(const FeasibleSet& set, Eigen::Index dim, int constraint_count);
};

/// Fixed step and penalty for the convex variant and the primal-dual baseline.
struct ClippedParams {
  double sigma = 1.0;
  double eta = 1.0;
};

/// sigma = (m+1)G^2/(2(1-kappa)), eta = 1/(G sqrt((m+1) R T)).
ClippedParams clipped_bound_params(const CurvatureProfile& profile, long horizon, double kappa);

/// Same sigma, eta = 1/(T^beta G sqrt(R (m+1))).
ClippedParams clipped_experiment_params(const CurvatureProfile& profile, long horizon, double kappa,
                                        double beta);

struct DynamicComparatorSpec {
  long feasible_rounds = 0;  // K
  double path_budget = 0.0;  // V
  long horizon = 1;          // T

  void validate() const;
};

/// df + sum_i lambda_i d[g_i]_+, using 0 at the kink.
Vector clipped_lagrangian_grad(const Vector& theta, const Vector& lambda, const LossRound& round);

/// theta_{t+1} = Proj_B(theta_t - eta dL), lambda_{t+1} = [g(theta_{t+1})]_+/(sigma eta).
ClippedState convex_round(const ClippedState& state, const LossRound& round, const ClippedParams& params,
                          const FeasibleSet& set);

/// eta_t = 1/(H t), phi_t = eta_t (m+1) G^2, lambda_{t+1} = [g(theta_{t+1})]_+/phi_{t+1}.
ClippedState strongly_convex_round(const ClippedState& state, const LossRound& round,
                                   const CurvatureProfile& profile, const FeasibleSet& set);

/// Primal-dual baseline: gradient descent on theta and projected gradient
/// ascent on lambda for f + lambda^T g - (sigma eta / 2)|lambda|^2.
ClippedState mahdavi_round(const ClippedState& state, const LossRound& round, const ClippedParams& params,
                           const FeasibleSet& set);

/// eta = c_eta sqrt((T - K + 1 + V)/T); c_eta <= 0 selects 1/(2G).
double dynamic_convex_eta(const DynamicComparatorSpec& spec, double grad_bound, double c_eta = 0.0);

/// gamma = 1 - 1/2 sqrt(max{V + T - K, ln^2 T / T}/((D+1) T)).
double dynamic_strongly_gamma(const DynamicComparatorSpec& spec, double diameter);

/// lambda_t = [g_t(theta_t)]_+/(sigma eta) with sigma = 2G^2, then the
/// projected step. Time-varying constraints come with each round.
ClippedState dynamic_convex_round(const ClippedState& state, const LossRound& round,
                                  const CurvatureProfile& profile, const DynamicComparatorSpec& spec,
                                  const FeasibleSet& set, double c_eta = 0.0);

/// lambda_t = [g_t(theta_t)]_+/phi_t with phi_t = 2G^2 eta_t and
/// eta_t = (1-gamma)/(ell (1-gamma^t)).
ClippedState dynamic_strongly_round(const ClippedState& state, const LossRound& round,
                                    const CurvatureProfile& profile, const DynamicComparatorSpec& spec,
                                    const FeasibleSet& set);

/// log sum_i exp g_i, evaluated with max subtraction.
Constraint logsumexp_aggregate(std::vector<Constraint> constraints);

/// max_i g_i with the subgradient of an active constraint.
Constraint max_aggregate(std::vector<Constraint> constraints);

/// Q_T for Q_t = [Q_{t-1} + g_t]_+, Q_0 = 0.
double queue_carryover(std::span<const double> violations);

}  // namespace oco
