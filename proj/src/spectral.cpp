#include "oco/spectral.hpp"

#include <cmath>

namespace oco {

namespace {

constexpr double kLogFloor = 1e-300;

// exp(values - max) normalized to a probability vector. Entries that would
// underflow are kept at kLogFloor so the support stays full.
Vector softmax(const Vector& values) {
  const Vector e = (values.array() - values.maxCoeff()).exp().max(kLogFloor).matrix();
  return e / e.sum();
}

// Projects the eigenvalues of a (numerically) density matrix onto B^n_d so
// they can be decomposed into corners.
Vector sanitize_spectrum(Vector w, int d) {
  w = w.cwiseMax(0.0);
  w /= w.sum();
  return w.cwiseMin(1.0 / d);
}

void check_covariance(const Matrix& C, Eigen::Index n) {
  require(C.rows() == n && C.cols() == n, "covariance dimension mismatch");
  require((C - C.transpose()).cwiseAbs().maxCoeff() <= 1e-8, "covariance must be symmetric");
  const SymmetricEigen eig = symmetric_eigen(C);
  require(eig.values.minCoeff() >= -1e-9 && eig.values.maxCoeff() <= 1.0 + 1e-9,
          "covariance eigenvalues must lie in [0, 1]");
}

// V = exp(ln W - eta C)/Tr(.), returned in its eigenbasis.
SymmetricEigen matrix_eg_step(const Matrix& W, const Matrix& C, double eta) {
  SymmetricEigen e = symmetric_eigen(symmetric_log(W) - eta * C);
  e.values = softmax(e.values);
  return e;
}

}  // namespace

Vector fixed_share(const Vector& v, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "fixed-share rate must lie in [0,1]");
  const double n = static_cast<double>(v.size());
  return (alpha / n + (1.0 - alpha) * v.array()).matrix();
}

Matrix symmetric_log(const Matrix& M) {
  const SymmetricEigen e = symmetric_eigen(M);
  return reassemble(e.vectors, e.values.cwiseMax(kLogFloor).array().log().matrix());
}

Matrix symmetric_exp(const Matrix& M) {
  const SymmetricEigen e = symmetric_eigen(M);
  return reassemble(e.vectors, e.values.array().exp().matrix());
}

ExpertSubsetState ExpertSubsetState::start(int n, int k, double eta, double alpha, std::uint64_t seed) {
  require(k >= 1 && k < n, "subset size must satisfy 1 <= k < n");
  require(eta >= 0.0, "eta must be non-negative");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  ExpertSubsetState s;
  s.w = {Vector::Constant(n, 1.0 / n), n - k};
  s.eta = eta;
  s.alpha = alpha;
  s.k = k;
  s.rng.seed(seed);
  return s;
}

SubsetOutcome subset_expert_round(ExpertSubsetState& state, const Vector& loss) {
  const Eigen::Index n = state.w.weights.size();
  require(loss.size() == n, "loss dimension mismatch");
  require(loss.minCoeff() >= 0.0 && loss.maxCoeff() <= 1.0, "expert losses must lie in [0,1]");
  const int d = state.w.cap_denominator;

  SubsetOutcome out;
  out.corner = sample_corner(mixture_decompose(state.w), state.rng);
  out.selected = out.corner.complement();
  out.expected_loss = d * state.w.weights.dot(loss);
  out.sampled_loss = d * out.corner.dense().dot(loss);

  Vector v = state.w.weights.cwiseProduct((-state.eta * loss).array().exp().matrix());
  v /= v.sum();
  state.w = cap_probability(fixed_share(v, state.alpha), d);
  ++state.round;
  return out;
}

PcaState PcaState::start(int n, int k, double eta, double alpha, std::uint64_t seed) {
  require(k >= 1 && k < n, "target rank must satisfy 1 <= k < n");
  require(eta >= 0.0, "eta must be non-negative");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  PcaState s;
  s.W = {Matrix::Identity(n, n) / n, n - k};
  s.eta = eta;
  s.alpha = alpha;
  s.k = k;
  s.rng.seed(seed);
  s.last_shared_eigenvalues = Vector::Constant(n, 1.0 / n);
  return s;
}

PcaOutcome pca_round(PcaState& state, const Vector& x) {
  const Eigen::Index n = state.W.matrix.rows();
  require(x.size() == n, "data dimension mismatch");
  require(x.norm() <= 1.0 + 1e-9, "data points must have norm at most 1");
  const int d = state.W.cap_denominator;

  const SymmetricEigen basis = symmetric_eigen(state.W.matrix);
  const CappedSimplexVector spectrum{sanitize_spectrum(basis.values, d), d};
  const Corner corner = sample_corner(mixture_decompose(spectrum), state.rng);
  const Matrix R = d * reassemble(basis.vectors, corner.dense());

  PcaOutcome out;
  out.projection = Matrix::Identity(n, n) - R;
  out.expected_loss = d * x.dot(state.W.matrix * x);
  out.sampled_loss = (x - out.projection * x).squaredNorm();

  const SymmetricEigen v = matrix_eg_step(state.W.matrix, x * x.transpose(), state.eta);
  state.last_shared_eigenvalues = fixed_share(v.values, state.alpha);
  const CappedSimplexVector capped = cap_probability(state.last_shared_eigenvalues, d);
  state.W.matrix = reassemble(v.vectors, capped.weights);
  ++state.round;
  return out;
}

PcaParams pca_params(long horizon, int n, int k, double loss_budget) {
  require(horizon >= 1, "horizon must be positive");
  require(k >= 1 && k < n, "target rank must satisfy 1 <= k < n");
  require(loss_budget > 0.0, "loss budget must be positive");
  const double T = static_cast<double>(horizon);
  const double d = static_cast<double>(n - k);
  PcaParams p;
  p.alpha = 1.0 / (T * d + 1.0);
  p.D = d * std::log(n * (1.0 + d * T)) + 1.0;
  p.eta = std::log(1.0 + std::sqrt(2.0 * p.D / loss_budget));
  return p;
}

VarUnitState VarUnitState::start(int n, double eta, double alpha, std::uint64_t seed) {
  require(n >= 1, "dimension must be positive");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  VarUnitState s;
  s.Y = Matrix::Identity(n, n) / n;
  s.eta = eta;
  s.alpha = alpha;
  s.rng.seed(seed);
  return s;
}

VarUnitOutcome var_unit_round(VarUnitState& state, const Matrix& C) {
  const Eigen::Index n = state.Y.rows();
  check_covariance(C, n);

  const SymmetricEigen basis = symmetric_eigen(state.Y);
  Vector sigma = basis.values.cwiseMax(0.0);
  sigma /= sigma.sum();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(state.rng);
  Eigen::Index pick = n - 1;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    acc += sigma(j);
    if (u < acc) {
      pick = j;
      break;
    }
  }

  VarUnitOutcome out;
  out.direction = basis.vectors.col(pick).normalized();
  out.expected_loss = (state.Y * C).trace();
  out.sampled_loss = out.direction.dot(C * out.direction);

  const SymmetricEigen v = matrix_eg_step(state.Y, C, state.eta);
  state.Y = reassemble(v.vectors, fixed_share(v.values, state.alpha));
  ++state.round;
  return out;
}

VarUnitParams var_unit_eta_horizon(long horizon, double n) {
  require(horizon >= 1, "horizon must be positive");
  require(n > 0.0, "dimension must be positive");
  const double T = static_cast<double>(horizon);
  return {std::sqrt(std::log(n * (1.0 + T))) / std::sqrt(T), 1.0 / (T + 1.0)};
}

VarSimplexState VarSimplexState::start(int n, double eta, double alpha) {
  require(n >= 1, "dimension must be positive");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  return VarSimplexState{Vector::Constant(n, 1.0 / n), eta, alpha, 1};
}

double var_simplex_round(VarSimplexState& state, const Matrix& C) {
  check_covariance(C, state.y.size());
  const Vector Cy = C * state.y;
  const double loss = state.y.dot(Cy);
  Vector log_v = state.y.cwiseMax(kLogFloor).array().log().matrix() - state.eta * Cy;
  state.y = fixed_share(softmax(log_v), state.alpha);
  ++state.round;
  return loss;
}

VarSimplexParams var_simplex_params(long horizon, int n, double loss_budget) {
  require(horizon >= 1, "horizon must be positive");
  require(loss_budget > 0.0, "loss budget must be positive");
  const double T = static_cast<double>(horizon);
  const double c = std::sqrt(2.0 * std::log((1.0 + T) * n) + 2.0) / std::sqrt(loss_budget);
  const double b = 0.5 * c;
  const double a = b / (2.0 * b + 1.0);
  return {2.0 * a, 1.0 / (T + 1.0)};
}

}  // namespace oco
