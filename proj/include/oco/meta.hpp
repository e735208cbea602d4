#pragma once

// Expert meta-algorithm over a grid of discount factors. Every expert is a
// discounted learner; the played point is the weight average of the expert
// iterates and the weights follow exponential weighting on expert losses.

#include "oco/core.hpp"
#include "oco/gd.hpp"
#include "oco/ons.hpp"

#include <string>
#include <variant>
#include <vector>

namespace oco {

struct DiscountGrid {
  std::vector<double> gammas;  // strictly descending in (0, 1]
  std::vector<double> priors;  // C/(i(i+1)) in the same order, sums to one
  bool include_one = true;
  std::vector<std::string> warnings;

  std::size_t size() const { return gammas.size(); }
};

/// eta_i = 1/2 ln T/(T sqrt(2D)) 2^{i-1}, i = 1..N,
/// N = ceil(1/2 log2(2 D T^2 / ln^2 T)) + 1, gamma_i = 1 - eta_i.
DiscountGrid build_discount_grid(long horizon, double diameter, bool include_one = true);

enum class LossFamily { ExpConcave, StronglyConvex };

/// alpha for exp-concave losses, ell/G^2 for strongly convex ones.
double lambda_for(const CurvatureProfile& profile, LossFamily family);

using Expert = std::variant<GdLearner, NewtonLearner>;

const Vector& expert_iterate(const Expert& expert);

struct MetaState {
  std::vector<Expert> experts;
  Vector weights;
  double lambda = 1.0;
  long round = 1;
};

struct MetaOutcome {
  Vector played;
  Vector expert_losses;
};

/// Plays the weighted average, reweights by exp(-lambda f_t(theta^gamma)) and
/// advances every expert with its own gradient. Mutates `state`.
MetaOutcome meta_round(MetaState& state, const LossRound& loss);

/// Discounted Newton experts, one per grid entry.
MetaState make_newton_meta(const DiscountGrid& grid, const Vector& initial, const FeasibleSet& set,
                           double eta, double epsilon, NewtonMode mode, double lambda);

/// Strongly-convex gradient experts; gamma = 1 maps to the 1/(ell t) rule.
MetaState make_gd_meta(const DiscountGrid& grid, const Vector& initial, const FeasibleSet& set,
                       const CurvatureProfile& profile, double lambda);

/// (1/lambda) ln(1/prior): the allowed excess of the meta loss over an expert.
double expert_tracking_bound(double prior, double lambda);

}  // namespace oco
