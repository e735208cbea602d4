#include "oco/ons.hpp"

#include <cmath>

namespace oco {

namespace {

Matrix inverse_from_factorization(const Matrix& P) {
  Eigen::LLT<Matrix> llt(P);
  if (llt.info() != Eigen::Success)
    throw NumericalError("Newton matrix lost positive definiteness (check gamma/epsilon)");
  Matrix inv = llt.solve(Matrix::Identity(P.rows(), P.cols()));
  return 0.5 * (inv + inv.transpose());
}

}  // namespace

NewtonState NewtonState::start(Vector initial, double gamma, double eta, double epsilon, NewtonMode mode) {
  require(gamma > 0.0 && gamma <= 1.0, "discount factor must lie in (0,1]");
  require(eta > 0.0, "eta must be positive");
  require(epsilon > 0.0, "epsilon must be positive");
  const Eigen::Index n = initial.size();
  NewtonState s;
  s.iterate = std::move(initial);
  s.P = epsilon * Matrix::Identity(n, n);
  s.P_inverse = (1.0 / epsilon) * Matrix::Identity(n, n);
  s.gamma = gamma;
  s.eta = eta;
  s.epsilon = epsilon;
  s.mode = mode;
  return s;
}

Matrix inverse_rank_one_update(const Matrix& P_inverse, const Vector& gradient, double gamma) {
  require(gamma > 0.0, "discount factor must be positive");
  const Vector v = P_inverse * gradient;
  const double denom = gamma + gradient.dot(v);
  if (!(denom > 0.0)) throw NumericalError("rank-one inverse update: non-positive denominator");
  Matrix out = (P_inverse - (v * v.transpose()) / denom) / gamma;
  return 0.5 * (out + out.transpose());
}

NewtonState newton_round(const NewtonState& state, const Vector& gradient,
                         const std::optional<Matrix>& hessian, const FeasibleSet& set) {
  require(gradient.size() == state.iterate.size(), "gradient dimension differs from iterate");
  if (!gradient.allFinite()) throw NumericalError("non-finite gradient");

  NewtonState next = state;
  if (state.mode == NewtonMode::Quasi) {
    next.P = state.gamma * state.P + gradient * gradient.transpose();
    if (++next.rounds_since_refactor >= kRefactorInterval) {
      next.P_inverse = inverse_from_factorization(next.P);
      next.rounds_since_refactor = 0;
    } else {
      next.P_inverse = inverse_rank_one_update(state.P_inverse, gradient, state.gamma);
    }
  } else {
    require(hessian.has_value(), "full Newton mode requires a Hessian");
    require(hessian->rows() == gradient.size() && hessian->cols() == gradient.size(),
            "Hessian dimension mismatch");
    const Matrix H = 0.5 * (*hessian + hessian->transpose());
    next.P = state.gamma * state.P + H;
    next.P_inverse = inverse_from_factorization(next.P);
  }

  const Vector step = next.P_inverse * gradient / state.eta;
  next.iterate = project_pnorm(set, next.P, state.iterate - step);
  if (!next.iterate.allFinite()) throw NumericalError("Newton step produced a non-finite iterate");
  ++next.round;
  return next;
}

double eta_for_case(const CurvatureProfile& profile, NewtonCase which) {
  switch (which) {
    case NewtonCase::ExpConcave:
      return 0.5 * std::min(1.0 / (4.0 * profile.grad_bound * profile.diameter), profile.alpha());
    case NewtonCase::StronglyConvexSmooth:
      return profile.ell() / profile.u();
    case NewtonCase::QuadraticLike:
      return 1.0;
  }
  throw InvalidArgument("unknown Newton case");
}

double practical_epsilon(const CurvatureProfile& profile) {
  const double rho = eta_for_case(profile, NewtonCase::ExpConcave);
  return 1.0 / (rho * rho * profile.diameter * profile.diameter);
}

NewtonLearner::NewtonLearner(NewtonState state, FeasibleSet set)
    : state_(std::move(state)), set_(std::move(set)) {}

}  // namespace oco
