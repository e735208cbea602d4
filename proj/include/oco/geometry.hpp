#pragma once

// Feasible sets and projection / decomposition primitives.
//
// The capped simplex B^n_d holds probability vectors whose entries are at
// most 1/d. Its extreme points ("corners") put mass 1/d on exactly d
// coordinates. Capping is the relative-entropy projection onto B^n_d; the
// mixture decomposition writes any capped vector as a convex combination of
// at most n corners.

#include "oco/core.hpp"

#include <random>
#include <variant>
#include <vector>

namespace oco {

struct Unbounded {};

/// Euclidean ball of the given radius centred at the origin.
struct Ball {
  double radius = 1.0;
};

/// Axis-aligned box lo <= x <= hi.
struct Box {
  Vector lo;
  Vector hi;
};

/// {x : |x|_1 <= radius}; used as the comparator set of the toy problem.
struct L1Ball {
  double radius = 1.0;
};

using FeasibleSet = std::variant<Unbounded, Ball, Box, L1Ball>;

Vector project_ball(const Vector& y, double radius);
Vector project_box(const Vector& y, const Vector& lo, const Vector& hi);
/// Euclidean projection onto the L1 ball by soft thresholding.
Vector project_l1_ball(const Vector& y, double radius);

/// Euclidean projection onto any supported set.
Vector project(const FeasibleSet& set, const Vector& y);
bool contains(const FeasibleSet& set, const Vector& x, double tol = 1e-9);
/// Centre of the set (origin for Ball and Unbounded, midpoint for Box).
Vector center_of(const FeasibleSet& set, Eigen::Index dim);

/// argmin_{|z| <= R} |z - y|_P^2, found by bisection on the multiplier of the
/// ball constraint: z(lambda) = (P + lambda I)^{-1} P y.
struct PnormProjection {
  Vector point;
  double multiplier = 0.0;
};
PnormProjection project_pnorm_ball(const Matrix& P, const Vector& y, double radius);

/// argmin_{lo <= z <= hi} |z - y|_P^2 by cyclic coordinate minimization.
Vector project_pnorm_box(const Matrix& P, const Vector& y, const Vector& lo, const Vector& hi);

/// P-norm projection onto Unbounded, Ball or Box sets.
Vector project_pnorm(const FeasibleSet& set, const Matrix& P, const Vector& y);

struct CappedSimplexVector {
  Vector weights;
  int cap_denominator = 1;

  /// Throws InvalidArgument unless the weights lie in B^n_d.
  void validate(double tol = 1e-9) const;
};

struct Corner {
  std::vector<int> support;  // sorted ascending, size d
  int dimension = 0;

  int cap_denominator() const { return static_cast<int>(support.size()); }
  /// Dense representation: 1/d on the support, 0 elsewhere.
  Vector dense() const;
  /// Indices not in the support.
  std::vector<int> complement() const;
  bool operator==(const Corner&) const = default;
};

struct WeightedCorner {
  double probability = 0.0;
  Corner corner;
};

using MixtureDecomposition = std::vector<WeightedCorner>;

CappedSimplexVector cap_probability(const Vector& w, int d);

MixtureDecomposition mixture_decompose(const CappedSimplexVector& w);

/// Draw a corner with its mixture probability (inverse CDF).
Corner sample_corner(const MixtureDecomposition& decomposition, std::mt19937_64& rng);
Corner sample_corner(const MixtureDecomposition& decomposition, std::uint64_t seed);

struct CappedDensityMatrix {
  Matrix matrix;
  int cap_denominator = 1;

  void validate(double tol = 1e-9) const;
};

/// Caps the eigenvalues of a trace-one symmetric matrix, keeping its
/// eigenvectors.
CappedDensityMatrix cap_density(const Matrix& M, int d);

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};
SymmetricEigen symmetric_eigen(const Matrix& M);

/// U diag(values) U^T, symmetrized.
Matrix reassemble(const Matrix& U, const Vector& values);

}  // namespace oco
