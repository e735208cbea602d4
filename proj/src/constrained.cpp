#include "oco/constrained.hpp"

#include <cmath>
#include <memory>

namespace oco {

namespace {

Vector clipped_constraints(const LossRound& round, const Vector& theta) {
  return round.constraint_values(theta).cwiseMax(0.0);
}

void check_multipliers(const ClippedState& state, const LossRound& round) {
  require(static_cast<std::size_t>(state.lambda.size()) == round.constraints.size(),
          "multiplier count differs from constraint count");
}

ClippedState projected_step(const ClippedState& state, const Vector& grad, double eta, const FeasibleSet& set) {
  if (!grad.allFinite()) throw NumericalError("non-finite Lagrangian subgradient");
  ClippedState next = state;
  next.iterate = project(set, state.iterate - eta * grad);
  next.last_step = eta;
  ++next.round;
  return next;
}

}  // namespace

ClippedState ClippedState::start(const FeasibleSet& set, Eigen::Index dim, int constraint_count) {
  require(constraint_count >= 0, "constraint count must be non-negative");
  ClippedState s;
  s.iterate = center_of(set, dim);
  s.lambda = Vector::Zero(constraint_count);
  return s;
}

ClippedParams clipped_bound_params(const CurvatureProfile& profile, long horizon, double kappa) {
  require(kappa > 0.0 && kappa < 1.0, "trade-off kappa must lie in (0,1)");
  require(horizon >= 1, "horizon must be positive");
  const double G = profile.grad_bound;
  const double m1 = profile.constraint_count + 1.0;
  return {m1 * G * G / (2.0 * (1.0 - kappa)),
          1.0 / (G * std::sqrt(m1 * profile.radius * static_cast<double>(horizon)))};
}

ClippedParams clipped_experiment_params(const CurvatureProfile& profile, long horizon, double kappa,
                                        double beta) {
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  ClippedParams p = clipped_bound_params(profile, horizon, kappa);
  const double m1 = profile.constraint_count + 1.0;
  p.eta = 1.0 / (std::pow(static_cast<double>(horizon), beta) * profile.grad_bound *
                 std::sqrt(profile.radius * m1));
  return p;
}

void DynamicComparatorSpec::validate() const {
  require(horizon >= 1, "horizon must be positive");
  require(feasible_rounds >= 0 && feasible_rounds <= horizon, "K must satisfy 0 <= K <= T");
  require(path_budget >= 0.0, "path budget must be non-negative");
}

Vector clipped_lagrangian_grad(const Vector& theta, const Vector& lambda, const LossRound& round) {
  require(static_cast<std::size_t>(lambda.size()) == round.constraints.size(),
          "multiplier count differs from constraint count");
  Vector grad = round.gradient(theta);
  for (std::size_t i = 0; i < round.constraints.size(); ++i) {
    const double li = lambda(static_cast<Eigen::Index>(i));
    if (li == 0.0) continue;
    if (round.constraints[i].value(theta) > 0.0) grad += li * round.constraints[i].subgradient(theta);
  }
  return grad;
}

ClippedState convex_round(const ClippedState& state, const LossRound& round, const ClippedParams& params,
                          const FeasibleSet& set) {
  check_multipliers(state, round);
  const double penalty = params.sigma * params.eta;
  ClippedState current = state;
  if (!current.multipliers_ready) {
    current.lambda = clipped_constraints(round, current.iterate) / penalty;
    current.multipliers_ready = true;
  }
  ClippedState next =
      projected_step(current, clipped_lagrangian_grad(current.iterate, current.lambda, round), params.eta, set);
  next.lambda = clipped_constraints(round, next.iterate) / penalty;
  return next;
}

ClippedState strongly_convex_round(const ClippedState& state, const LossRound& round,
                                   const CurvatureProfile& profile, const FeasibleSet& set) {
  check_multipliers(state, round);
  const double H = profile.ell();
  const double G2m = (profile.constraint_count + 1.0) * profile.grad_bound * profile.grad_bound;
  auto eta_at = [&](long t) { return 1.0 / (H * static_cast<double>(t)); };

  ClippedState current = state;
  if (!current.multipliers_ready) {
    current.lambda = clipped_constraints(round, current.iterate) / (eta_at(current.round) * G2m);
    current.multipliers_ready = true;
  }
  const double eta = eta_at(current.round);
  ClippedState next =
      projected_step(current, clipped_lagrangian_grad(current.iterate, current.lambda, round), eta, set);
  next.lambda = clipped_constraints(round, next.iterate) / (eta_at(next.round) * G2m);
  return next;
}

ClippedState mahdavi_round(const ClippedState& state, const LossRound& round, const ClippedParams& params,
                           const FeasibleSet& set) {
  check_multipliers(state, round);
  const Vector g = round.constraint_values(state.iterate);
  Vector grad = round.gradient(state.iterate);
  for (std::size_t i = 0; i < round.constraints.size(); ++i)
    grad += state.lambda(static_cast<Eigen::Index>(i)) * round.constraints[i].subgradient(state.iterate);

  ClippedState next = projected_step(state, grad, params.eta, set);
  const Vector ascent = g - params.sigma * params.eta * state.lambda;
  next.lambda = (state.lambda + params.eta * ascent).cwiseMax(0.0);
  next.multipliers_ready = true;
  return next;
}

double dynamic_convex_eta(const DynamicComparatorSpec& spec, double grad_bound, double c_eta) {
  spec.validate();
  require(grad_bound > 0.0, "gradient bound must be positive");
  const double c = c_eta > 0.0 ? c_eta : 1.0 / (2.0 * grad_bound);
  const double T = static_cast<double>(spec.horizon);
  return c * std::sqrt((T - static_cast<double>(spec.feasible_rounds) + 1.0 + spec.path_budget) / T);
}

double dynamic_strongly_gamma(const DynamicComparatorSpec& spec, double diameter) {
  spec.validate();
  require(spec.horizon >= 2, "horizon must be at least 2");
  const double T = static_cast<double>(spec.horizon);
  const double log_t = std::log(T);
  const double budget = spec.path_budget + T - static_cast<double>(spec.feasible_rounds);
  return 1.0 - 0.5 * std::sqrt(std::max(budget, log_t * log_t / T) / ((diameter + 1.0) * T));
}

ClippedState dynamic_convex_round(const ClippedState& state, const LossRound& round,
                                  const CurvatureProfile& profile, const DynamicComparatorSpec& spec,
                                  const FeasibleSet& set, double c_eta) {
  check_multipliers(state, round);
  const double G = profile.grad_bound;
  const double sigma = 2.0 * G * G;
  const double eta = dynamic_convex_eta(spec, G, c_eta);

  ClippedState current = state;
  current.lambda = clipped_constraints(round, current.iterate) / (sigma * eta);
  current.multipliers_ready = true;
  return projected_step(current, clipped_lagrangian_grad(current.iterate, current.lambda, round), eta, set);
}

ClippedState dynamic_strongly_round(const ClippedState& state, const LossRound& round,
                                    const CurvatureProfile& profile, const DynamicComparatorSpec& spec,
                                    const FeasibleSet& set) {
  check_multipliers(state, round);
  const double ell = profile.ell();
  const double G = profile.grad_bound;
  const double gamma = dynamic_strongly_gamma(spec, profile.diameter);
  const double eta = (1.0 - gamma) / (ell * (1.0 - std::pow(gamma, static_cast<double>(state.round))));
  const double phi = 2.0 * G * G * eta;

  ClippedState current = state;
  current.lambda = clipped_constraints(round, current.iterate) / phi;
  current.multipliers_ready = true;
  return projected_step(current, clipped_lagrangian_grad(current.iterate, current.lambda, round), eta, set);
}

Constraint logsumexp_aggregate(std::vector<Constraint> constraints) {
  require(!constraints.empty(), "aggregate needs at least one constraint");
  auto shared = std::make_shared<const std::vector<Constraint>>(std::move(constraints));
  auto values = [shared](const Vector& x) {
    Vector g(static_cast<Eigen::Index>(shared->size()));
    for (std::size_t i = 0; i < shared->size(); ++i) g(static_cast<Eigen::Index>(i)) = (*shared)[i].value(x);
    return g;
  };
  Constraint out;
  out.value = [values](const Vector& x) {
    const Vector g = values(x);
    const double top = g.maxCoeff();
    return top + std::log((g.array() - top).exp().sum());
  };
  out.subgradient = [shared, values](const Vector& x) {
    const Vector g = values(x);
    const Vector w = (g.array() - g.maxCoeff()).exp().matrix();
    const double total = w.sum();
    Vector grad = Vector::Zero(x.size());
    for (std::size_t i = 0; i < shared->size(); ++i)
      grad += (w(static_cast<Eigen::Index>(i)) / total) * (*shared)[i].subgradient(x);
    return grad;
  };
  return out;
}

Constraint max_aggregate(std::vector<Constraint> constraints) {
  require(!constraints.empty(), "aggregate needs at least one constraint");
  auto shared = std::make_shared<const std::vector<Constraint>>(std::move(constraints));
  auto argmax = [shared](const Vector& x) {
    std::size_t best = 0;
    double best_value = (*shared)[0].value(x);
    for (std::size_t i = 1; i < shared->size(); ++i) {
      const double v = (*shared)[i].value(x);
      if (v > best_value) {
        best_value = v;
        best = i;
      }
    }
    return std::pair{best, best_value};
  };
  Constraint out;
  out.value = [argmax](const Vector& x) { return argmax(x).second; };
  out.subgradient = [shared, argmax](const Vector& x) { return (*shared)[argmax(x).first].subgradient(x); };
  return out;
}

double queue_carryover(std::span<const double> violations) {
  double q = 0.0;
  for (double g : violations) q = positive_part(q + g);
  return q;
}

}  // namespace oco
