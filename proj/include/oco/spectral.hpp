#pragma once

// Adaptive best-subset-of-experts, uncentered online adaptive PCA and online
// adaptive variance minimization. All of them are exponentiated-gradient
// updates (vector or matrix) followed by a fixed-share mix with the uniform
// distribution; the subset and PCA variants additionally cap the result onto
// the capped simplex so that it can be sampled as a mixture of corners.

#include "oco/core.hpp"
#include "oco/geometry.hpp"

#include <random>
#include <vector>

namespace oco {

/// alpha/n + (1 - alpha) v, componentwise.
Vector fixed_share(const Vector& v, double alpha);

/// Matrix logarithm / exponential of a symmetric matrix via its eigenbasis.
/// Eigenvalues below 1e-300 are floored before the logarithm.
Matrix symmetric_log(const Matrix& M);
Matrix symmetric_exp(const Matrix& M);

// ---------------------------------------------------------------------------
// Adaptive best subset of experts

struct ExpertSubsetState {
  CappedSimplexVector w;  // cap denominator n - k
  double eta = 1.0;
  double alpha = 0.0;
  long round = 1;
  int k = 1;
  std::mt19937_64 rng;

  /// Uniform start over n experts, choosing k of them each round.
  static ExpertSubsetState start(int n, int k, double eta, double alpha, std::uint64_t seed);
};

struct SubsetOutcome {
  Corner corner;              // support carries n - k entries of 1/(n-k)
  std::vector<int> selected;  // the k indices where the corner is zero
  double expected_loss = 0.0; // (n-k) w_t^T loss
  double sampled_loss = 0.0;  // (n-k) r^T loss
};

/// Samples a corner from w_t, then applies the EG, fixed-share and capping steps.
SubsetOutcome subset_expert_round(ExpertSubsetState& state, const Vector& loss);

// ---------------------------------------------------------------------------
// Online adaptive PCA

struct PcaState {
  CappedDensityMatrix W;  // cap denominator n - k
  double eta = 1.0;
  double alpha = 0.0;
  long round = 1;
  int k = 1;
  std::mt19937_64 rng;
  Vector last_shared_eigenvalues;  // fixed-share eigenvalues before capping

  /// W_1 = I/n.
  static PcaState start(int n, int k, double eta, double alpha, std::uint64_t seed);
};

struct PcaOutcome {
  Matrix projection;           // rank-k projection P_t = I - R
  double expected_loss = 0.0;  // (n-k) Tr(W_t x x^T)
  double sampled_loss = 0.0;   // |x - P_t x|^2
};

PcaOutcome pca_round(PcaState& state, const Vector& x);

struct PcaParams {
  double alpha;
  double D;
  double eta;
};

/// alpha = 1/(T(n-k)+1), D = (n-k) ln(n(1+(n-k)T)) + 1, eta = ln(1 + sqrt(2D/L)).
PcaParams pca_params(long horizon, int n, int k, double loss_budget);

// ---------------------------------------------------------------------------
// Online adaptive variance minimization

struct VarUnitState {
  Matrix Y;  // density matrix
  double eta = 1.0;
  double alpha = 0.0;
  long round = 1;
  std::mt19937_64 rng;

  static VarUnitState start(int n, double eta, double alpha, std::uint64_t seed);
};

struct VarUnitOutcome {
  Vector direction;            // unit eigenvector of Y_t
  double expected_loss = 0.0;  // Tr(Y_t C_t)
  double sampled_loss = 0.0;   // y^T C_t y
};

VarUnitOutcome var_unit_round(VarUnitState& state, const Matrix& C);

struct VarUnitParams {
  double eta;
  double alpha;
};

/// eta = sqrt(ln(n(1+T)))/sqrt(T), alpha = 1/(T+1).
VarUnitParams var_unit_eta_horizon(long horizon, double n);

struct VarSimplexState {
  Vector y;
  double eta = 1.0;
  double alpha = 0.0;
  long round = 1;

  static VarSimplexState start(int n, double eta, double alpha);
};

/// Returns y_t^T C y_t and applies the EG + fixed-share update.
double var_simplex_round(VarSimplexState& state, const Matrix& C);

struct VarSimplexParams {
  double eta;
  double alpha;
};

/// alpha = 1/(T+1), c = sqrt(2 ln((1+T) n) + 2)/sqrt(L), b = c/2,
/// a = b/(2b+1), eta = 2a.
VarSimplexParams var_simplex_params(long horizon, int n, double loss_budget);

}  // namespace oco
