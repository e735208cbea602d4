#include "oco/meta.hpp"

#include <cmath>

namespace oco {

DiscountGrid build_discount_grid(long horizon, double diameter, bool include_one) {
  require(horizon >= 2, "horizon must be at least 2");
  require(diameter > 0.0, "diameter must be positive");
  const double T = static_cast<double>(horizon);
  const double log_t = std::log(T);
  const int N = static_cast<int>(std::ceil(0.5 * std::log2(2.0 * diameter * T * T / (log_t * log_t)))) + 1;
  const double base = 0.5 * log_t / (T * std::sqrt(2.0 * diameter));

  DiscountGrid grid;
  grid.include_one = include_one;
  if (include_one) grid.gammas.push_back(1.0);
  for (int i = 1; i <= N; ++i) {
    const double eta = base * std::ldexp(1.0, i - 1);
    if (eta >= 1.0) {
      grid.warnings.push_back("dropped grid entry " + std::to_string(i) + ": eta = " + std::to_string(eta) +
                              " >= 1");
      continue;
    }
    grid.gammas.push_back(1.0 - eta);
  }

  // Entries are already descending (eta grows with i).
  const std::size_t slots = grid.gammas.size();
  const double C = 1.0 + 1.0 / static_cast<double>(slots);
  double total = 0.0;
  for (std::size_t i = 1; i <= slots; ++i) {
    grid.priors.push_back(C / static_cast<double>(i * (i + 1)));
    total += grid.priors.back();
  }
  for (double& p : grid.priors) p /= total;
  return grid;
}

double lambda_for(const CurvatureProfile& profile, LossFamily family) {
  switch (family) {
    case LossFamily::ExpConcave:
      return profile.alpha();
    case LossFamily::StronglyConvex: {
      require(profile.grad_bound > 0.0, "strongly convex weighting needs the gradient bound G");
      return profile.ell() / (profile.grad_bound * profile.grad_bound);
    }
  }
  throw InvalidArgument("unknown loss family");
}

const Vector& expert_iterate(const Expert& expert) {
  return std::visit([](const auto& e) -> const Vector& { return e.iterate(); }, expert);
}

MetaOutcome meta_round(MetaState& state, const LossRound& loss) {
  const std::size_t k = state.experts.size();
  require(k > 0, "meta-algorithm needs at least one expert");
  require(static_cast<std::size_t>(state.weights.size()) == k, "one weight per expert");

  MetaOutcome out;
  out.played = Vector::Zero(expert_iterate(state.experts.front()).size());
  for (std::size_t i = 0; i < k; ++i)
    out.played += state.weights(static_cast<Eigen::Index>(i)) * expert_iterate(state.experts[i]);

  out.expert_losses.resize(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const double f = loss.value(expert_iterate(state.experts[i]));
    if (!std::isfinite(f)) throw NumericalError("non-finite expert loss");
    out.expert_losses(static_cast<Eigen::Index>(i)) = f;
  }

  // Log-space reweighting with max subtraction.
  Vector log_w(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < log_w.size(); ++i)
    log_w(i) = std::log(state.weights(i)) - state.lambda * out.expert_losses(i);
  const double top = log_w.maxCoeff();
  Vector w = (log_w.array() - top).exp().matrix();
  state.weights = w / w.sum();

  for (Expert& e : state.experts) {
    std::visit(
        [&](auto& learner) {
          const Vector& x = learner.iterate();
          const Vector g = loss.gradient(x);
          if constexpr (std::is_same_v<std::decay_t<decltype(learner)>, NewtonLearner>) {
            if (learner.state().mode == NewtonMode::Full) {
              learner.update(g, loss.hessian(x));
              return;
            }
          }
          learner.update(g);
        },
        e);
  }
  ++state.round;
  return out;
}

MetaState make_newton_meta(const DiscountGrid& grid, const Vector& initial, const FeasibleSet& set,
                           double eta, double epsilon, NewtonMode mode, double lambda) {
  require(lambda > 0.0, "lambda must be positive");
  MetaState s;
  s.lambda = lambda;
  for (double g : grid.gammas)
    s.experts.emplace_back(NewtonLearner(NewtonState::start(initial, g, eta, epsilon, mode), set));
  s.weights = Eigen::Map<const Vector>(grid.priors.data(), static_cast<Eigen::Index>(grid.priors.size()));
  return s;
}

MetaState make_gd_meta(const DiscountGrid& grid, const Vector& initial, const FeasibleSet& set,
                       const CurvatureProfile& profile, double lambda) {
  require(lambda > 0.0, "lambda must be positive");
  MetaState s;
  s.lambda = lambda;
  for (double g : grid.gammas) {
    GdState st = g >= 1.0 ? GdState::start(initial, 0.5, StepRule::Classic)
                          : GdState::start(initial, g, StepRule::StronglyConvex);
    s.experts.emplace_back(GdLearner(std::move(st), set, profile));
  }
  s.weights = Eigen::Map<const Vector>(grid.priors.data(), static_cast<Eigen::Index>(grid.priors.size()));
  return s;
}

double expert_tracking_bound(double prior, double lambda) {
  require(prior > 0.0 && lambda > 0.0, "prior and lambda must be positive");
  return std::log(1.0 / prior) / lambda;
}

}  // namespace oco
