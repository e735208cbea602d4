#include "oco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oco {

namespace {

// Indices sorted by decreasing value, ties broken by lowest index.
std::vector<int> descending_order(const Vector& w) {
  std::vector<int> order(static_cast<std::size_t>(w.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w(a) > w(b); });
  return order;
}

}  // namespace

Vector project_ball(const Vector& y, double radius) {
  require(radius > 0.0, "ball radius must be positive");
  const double norm = y.norm();
  if (norm <= radius) return y;
  return y * (radius / norm);
}

Vector project_box(const Vector& y, const Vector& lo, const Vector& hi) {
  require(lo.size() == y.size() && hi.size() == y.size(), "box dimension mismatch");
  require((lo.array() <= hi.array()).all(), "box lower bound exceeds upper bound");
  return y.cwiseMax(lo).cwiseMin(hi);
}

Vector project_l1_ball(const Vector& y, double radius) {
  require(radius > 0.0, "L1 ball radius must be positive");
  if (y.lpNorm<1>() <= radius) return y;
  std::vector<double> mags(y.data(), y.data() + y.size());
  for (double& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cumulative += mags[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (mags[j] > candidate) threshold = candidate;
  }
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i)
    out(i) = std::copysign(std::max(std::abs(y(i)) - threshold, 0.0), y(i));
  return out;
}

Vector project(const FeasibleSet& set, const Vector& y) {
  return std::visit(
      [&](const auto& s) -> Vector {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Unbounded>) return y;
        else if constexpr (std::is_same_v<S, Ball>) return project_ball(y, s.radius);
        else if constexpr (std::is_same_v<S, L1Ball>) return project_l1_ball(y, s.radius);
        else return project_box(y, s.lo, s.hi);
      },
      set);
}

bool contains(const FeasibleSet& set, const Vector& x, double tol) {
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Unbounded>) return true;
        else if constexpr (std::is_same_v<S, Ball>) return x.norm() <= s.radius + tol;
        else if constexpr (std::is_same_v<S, L1Ball>) return x.lpNorm<1>() <= s.radius + tol;
        else
          return ((x - s.lo).array() >= -tol).all() && ((s.hi - x).array() >= -tol).all();
      },
      set);
}

Vector center_of(const FeasibleSet& set, Eigen::Index dim) {
  if (const auto* box = std::get_if<Box>(&set)) return 0.5 * (box->lo + box->hi);
  return Vector::Zero(dim);
}

PnormProjection project_pnorm_ball(const Matrix& P, const Vector& y, double radius) {
  require(radius > 0.0, "ball radius must be positive");
  require(P.rows() == P.cols() && P.rows() == y.size(), "P-norm projection dimension mismatch");
  if (y.norm() <= radius) return {y, 0.0};

  const Matrix Ps = 0.5 * (P + P.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Ps);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
    throw NumericalError("P-norm projection requires a positive definite matrix");
  const Vector& mu = eig.eigenvalues();
  const Matrix& Q = eig.eigenvectors();
  const Vector coords = Q.transpose() * y;

  // |z(lambda)| is strictly decreasing in lambda.
  auto point_at = [&](double lambda) -> Vector {
    return Q * (mu.array() / (mu.array() + lambda) * coords.array()).matrix();
  };

  double lo = 0.0;
  double hi = 1.0;
  while (point_at(hi).norm() >= radius) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericalError("P-norm projection bracket diverged");
  }
  while (hi - lo > 1e-12 * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    if (point_at(mid).norm() >= radius) lo = mid;
    else hi = mid;
  }
  return {point_at(hi), hi};
}

Vector project_pnorm_box(const Matrix& P, const Vector& y, const Vector& lo, const Vector& hi) {
  require(P.rows() == y.size() && lo.size() == y.size() && hi.size() == y.size(),
          "P-norm box projection dimension mismatch");
  Vector z = project_box(y, lo, hi);
  if (z == y) return z;
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    if (!(P(i, i) > 0.0)) throw NumericalError("P-norm projection requires a positive definite matrix");

  Vector residual = P * (z - y);
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double largest_move = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double target = std::clamp(z(i) - residual(i) / P(i, i), lo(i), hi(i));
      const double move = target - z(i);
      if (move != 0.0) {
        residual += move * P.col(i);
        z(i) = target;
        largest_move = std::max(largest_move, std::abs(move));
      }
    }
    if (largest_move < 1e-14 * (1.0 + z.lpNorm<Eigen::Infinity>())) break;
  }
  return z;
}

Vector project_pnorm(const FeasibleSet& set, const Matrix& P, const Vector& y) {
  return std::visit(
      [&](const auto& s) -> Vector {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Unbounded>) return y;
        else if constexpr (std::is_same_v<S, Ball>) return project_pnorm_ball(P, y, s.radius).point;
        else if constexpr (std::is_same_v<S, Box>) return project_pnorm_box(P, y, s.lo, s.hi);
        else throw InvalidArgument("P-norm projection supports ball and box sets only");
      },
      set);
}

void CappedSimplexVector::validate(double tol) const {
  const Eigen::Index n = weights.size();
  require(cap_denominator >= 1 && cap_denominator <= n, "cap denominator out of range");
  require(std::abs(weights.sum() - 1.0) <= tol, "capped vector does not sum to one");
  require(weights.minCoeff() >= -tol, "capped vector has negative entries");
  require(weights.maxCoeff() <= 1.0 / cap_denominator + tol, "capped vector exceeds its cap");
}

Vector Corner::dense() const {
  Vector r = Vector::Zero(dimension);
  for (int i : support) r(i) = 1.0 / static_cast<double>(support.size());
  return r;
}

std::vector<int> Corner::complement() const {
  std::vector<int> out;
  std::size_t j = 0;
  for (int i = 0; i < dimension; ++i) {
    if (j < support.size() && support[j] == i) ++j;
    else out.push_back(i);
  }
  return out;
}

CappedSimplexVector cap_probability(const Vector& w, int d) {
  const Eigen::Index n = w.size();
  require(d >= 1 && d < n, "cap denominator must satisfy 1 <= d < n");
  require(std::abs(w.sum() - 1.0) <= 1e-9 && w.minCoeff() >= -1e-12,
          "capping input must be a probability vector");

  const double cap = 1.0 / d;
  if (w.maxCoeff() <= cap) return {w, d};

  const std::vector<int> order = descending_order(w);
  Vector capped = w;
  for (int i = 1; i < d; ++i) {
    // Fix the i largest entries at 1/d and rescale the rest to mass (d - i)/d.
    double rest = 0.0;
    for (Eigen::Index j = i; j < n; ++j) rest += w(order[j]);
    if (!(rest > 0.0)) break;
    capped = w;
    for (int j = 0; j < i; ++j) capped(order[j]) = cap;
    const double scale = (static_cast<double>(d - i) / d) / rest;
    for (Eigen::Index j = i; j < n; ++j) capped(order[j]) = w(order[j]) * scale;
    if (capped(order[i]) <= cap * (1.0 + 1e-12)) {
      for (Eigen::Index j = i; j < n; ++j) capped(order[j]) = std::min(capped(order[j]), cap);
      return {capped, d};
    }
  }
  // i = d would leave zero mass for the rest; only reachable when the input
  // has fewer than d non-negligible entries.
  throw NumericalError("capping failed: input has fewer than d non-zero entries");
}

MixtureDecomposition mixture_decompose(const CappedSimplexVector& w) {
  w.validate(1e-9);
  const int d = w.cap_denominator;
  const Eigen::Index n = w.weights.size();
  MixtureDecomposition out;

  Vector remaining = w.weights.cwiseMax(0.0);
  double mass = remaining.sum();
  while (mass > 1e-12 && static_cast<Eigen::Index>(out.size()) < n + 1) {
    const std::vector<int> order = descending_order(remaining);
    // The d largest entries include every entry equal to mass/d.
    const double smallest_chosen = remaining(order[d - 1]);
    const double largest_other = d < n ? remaining(order[d]) : 0.0;
    double p = std::min(d * smallest_chosen, mass - d * largest_other);
    if (p <= 0.0) break;
    p = std::min(p, mass);

    Corner corner;
    corner.dimension = static_cast<int>(n);
    corner.support.assign(order.begin(), order.begin() + d);
    std::sort(corner.support.begin(), corner.support.end());
    for (int i : corner.support) remaining(i) = std::max(0.0, remaining(i) - p / d);
    mass = remaining.sum();
    out.push_back({p, std::move(corner)});
  }
  return out;
}

Corner sample_corner(const MixtureDecomposition& decomposition, std::mt19937_64& rng) {
  require(!decomposition.empty(), "cannot sample from an empty decomposition");
  double total = 0.0;
  for (const auto& wc : decomposition) total += wc.probability;
  std::uniform_real_distribution<double> unif(0.0, total);
  const double u = unif(rng);
  double acc = 0.0;
  for (const auto& wc : decomposition) {
    acc += wc.probability;
    if (u < acc) return wc.corner;
  }
  return decomposition.back().corner;
}

Corner sample_corner(const MixtureDecomposition& decomposition, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_corner(decomposition, rng);
}

void CappedDensityMatrix::validate(double tol) const {
  require(matrix.rows() == matrix.cols(), "density matrix must be square");
  require((matrix - matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-10, "density matrix not symmetric");
  require(std::abs(matrix.trace() - 1.0) <= tol, "density matrix trace differs from one");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix, Eigen::EigenvaluesOnly);
  require(eig.eigenvalues().minCoeff() >= -tol, "density matrix has negative eigenvalues");
  require(eig.eigenvalues().maxCoeff() <= 1.0 / cap_denominator + tol,
          "density matrix eigenvalues exceed the cap");
}

SymmetricEigen symmetric_eigen(const Matrix& M) {
  require(M.rows() == M.cols(), "eigendecomposition of a non-square matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (M + M.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  return {eig.eigenvalues(), eig.eigenvectors()};
}

Matrix reassemble(const Matrix& U, const Vector& values) {
  Matrix M = U * values.asDiagonal() * U.transpose();
  return 0.5 * (M + M.transpose());
}

CappedDensityMatrix cap_density(const Matrix& M, int d) {
  require(M.rows() == M.cols(), "density matrix must be square");
  require((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-8, "cap_density input is not symmetric");
  require(std::abs(M.trace() - 1.0) <= 1e-9, "cap_density input must have unit trace");
  SymmetricEigen eig = symmetric_eigen(M);
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) < 0.0 && eig.values(i) >= -1e-12) eig.values(i) = 0.0;
  const CappedSimplexVector capped = cap_probability(eig.values, d);
  return {reassemble(eig.vectors, capped.weights), d};
}

}  // namespace oco
