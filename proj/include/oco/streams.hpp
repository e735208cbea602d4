#pragma once

// Loss-stream generators for the benchmark problems. Every generator is a
// pure function of its parameters and seed; randomness comes from named
// sub-streams so that two generators sharing a seed never share draws.

#include "oco/core.hpp"
#include "oco/geometry.hpp"

#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace oco {

/// Seed of the sub-stream `name` under the master seed.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view name);
std::mt19937_64 substream(std::uint64_t seed, std::string_view name);

// ---------------------------------------------------------------------------
// Toy problem: linear losses with unit-norm costs and |x_1| + |x_2| <= 1.

std::vector<LossRound> gen_toy_stream(long horizon, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Piecewise-stationary low-rank data for online PCA.

/// Each segment draws x = A z with A (n x rank) Gaussian and z standard
/// normal; points with norm above one are rescaled to norm one.
std::vector<Vector> gen_subspace_stream(long horizon, int n, int rank, int segments, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Doubly-stochastic approximation. X is flattened row-major.

/// The 4 dim + dim^2 inequalities X1 >= 1, X1 <= 1, X^T 1 >= 1, X^T 1 <= 1, X >= 0.
std::vector<Constraint> doubly_stochastic_constraints(int dim);

/// f_t(X) = 1/2 |Y_t - X|_F^2 with Y_t a uniform random permutation matrix.
std::vector<LossRound> gen_permutation_stream(long horizon, int dim, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Economic dispatch with three generators.

struct DispatchModel {
  Vector a = (Vector(3) << 0.2, 0.12, 0.14).finished();
  Vector b = (Vector(3) << 1.5, 1.0, 0.6).finished();
  Vector d = (Vector(3) << 0.26, 0.38, 0.37).finished();
  Vector e = Vector::Zero(3);  // linear emission terms; not published, default 0
  double emission_cap = 100.0;
  double xi = 0.5;
  Vector theta_max = (Vector(3) << 20.0, 15.0, 18.0).finished();

  void validate() const;
  Box box() const;
  /// sum_i 1/2 a_i x_i^2 + b_i x_i.
  double generation_cost(const Vector& theta) const;
  /// sum_i d_i x_i^2 + e_i x_i - E_max.
  double emission_excess(const Vector& theta) const;
};

/// f_t(x) = sum_i (1/2 a_i x_i^2 + b_i x_i) + xi (sum_i x_i - demand_t)^2
/// with the emission constraint attached to every round.
std::vector<LossRound> gen_dispatch_stream(const DispatchModel& model, std::span<const double> demand);

/// Linear map of the values onto [lo, hi]; a constant series maps to the midpoint.
std::vector<double> rescale(std::span<const double> values, double lo = 10.0, double hi = 45.0);

/// Daily sinusoid (288 five-minute slots per day) plus Gaussian noise,
/// rescaled to [10, 45].
std::vector<double> synthetic_demand(long horizon, std::uint64_t seed);

/// Reads a `t,demand` CSV and rescales the demand column to [10, 45].
/// Throws IoError when the file cannot be opened, InvalidArgument on
/// malformed or negative entries.
std::vector<double> load_demand_csv(const std::string& path);

// ---------------------------------------------------------------------------
// Adversarial one-dimensional stream.

struct AdversarialStream {
  std::vector<LossRound> rounds;  // f_t(x) = (x - eps_t)^2
  std::vector<double> epsilons;   // +-2 sigma, equally likely
  std::vector<Vector> comparators;  // z_t = eps_t / 2
};

AdversarialStream gen_adversarial_stream(long horizon, double sigma_level, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Random strongly convex quadratics with piecewise-constant minimizers.

struct QuadraticStreamOptions {
  int dim = 5;
  double target_radius = 1.0;  // segment centres are uniform in this ball
  double ell = 1.0;            // eigenvalues of the curvature lie in [ell, u]
  double u = 1.0;
  int segments = 1;
  double noise = 0.0;          // per-round Gaussian jitter of the minimizer
};

struct QuadraticStream {
  std::vector<LossRound> rounds;  // f_t(x) = 1/2 (x - y_t)^T A_t (x - y_t)
  std::vector<Vector> targets;    // y_t
  std::vector<Matrix> curvatures; // A_t
};

QuadraticStream gen_quadratic_stream(long horizon, const QuadraticStreamOptions& options, std::uint64_t seed);

}  // namespace oco
