#include "oco/streams.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

namespace oco {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sign(double x) { return (x > 0.0) - (x < 0.0); }

Vector gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Vector uniform_in_ball(Eigen::Index n, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector v = gaussian_vector(n, rng);
  const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n));
  return r * v / v.norm();
}

Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, n, rng));
  return qr.householderQ() * Matrix::Identity(n, n);
}

LossRound quadratic_round(Vector target, Matrix curvature) {
  auto y = std::make_shared<const Vector>(std::move(target));
  auto A = std::make_shared<const Matrix>(std::move(curvature));
  LossRound r;
  r.value = [y, A](const Vector& x) {
    const Vector diff = x - *y;
    return 0.5 * diff.dot(*A * diff);
  };
  r.gradient = [y, A](const Vector& x) -> Vector { return *A * (x - *y); };
  r.hessian = [A](const Vector&) { return *A; };
  return r;
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed) ^ h);
}

std::mt19937_64 substream(std::uint64_t seed, std::string_view name) {
  return std::mt19937_64(substream_seed(seed, name));
}

std::vector<LossRound> gen_toy_stream(long horizon, std::uint64_t seed) {
  require(horizon >= 1, "horizon must be positive");
  auto rng = substream(seed, "toy.costs");
  std::uniform_real_distribution<double> first(0.0, 1.2);
  std::uniform_real_distribution<double> second(0.0, 1.0);

  Constraint l1;
  l1.value = [](const Vector& x) { return std::abs(x(0)) + std::abs(x(1)) - 1.0; };
  l1.subgradient = [](const Vector& x) {
    Vector g(2);
    g << sign(x(0)), sign(x(1));
    return g;
  };

  std::vector<LossRound> rounds;
  rounds.reserve(static_cast<std::size_t>(horizon));
  for (long t = 0; t < horizon; ++t) {
    Vector c(2);
    do {
      c(0) = first(rng);
      c(1) = second(rng);
    } while (c.norm() < 1e-12);
    c /= c.norm();
    LossRound r;
    r.value = [c](const Vector& x) { return c.dot(x); };
    r.gradient = [c](const Vector&) { return c; };
    r.hessian = [](const Vector&) -> Matrix { return Matrix::Zero(2, 2); };
    r.constraints = {l1};
    rounds.push_back(std::move(r));
  }
  return rounds;
}

std::vector<Vector> gen_subspace_stream(long horizon, int n, int rank, int segments, std::uint64_t seed) {
  require(horizon >= 1 && segments >= 1, "horizon and segment count must be positive");
  require(horizon % segments == 0, "horizon must be divisible by the segment count");
  require(rank >= 1 && rank <= n, "rank must lie in [1, n]");
  auto basis_rng = substream(seed, "subspace.basis");
  auto sample_rng = substream(seed, "subspace.samples");
  const long per_segment = horizon / segments;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n) * rank);

  std::vector<Vector> xs;
  xs.reserve(static_cast<std::size_t>(horizon));
  for (int s = 0; s < segments; ++s) {
    const Matrix A = scale * gaussian_matrix(n, rank, basis_rng);
    for (long i = 0; i < per_segment; ++i) {
      Vector x = A * gaussian_vector(rank, sample_rng);
      const double norm = x.norm();
      if (norm > 1.0) x /= norm;
      xs.push_back(std::move(x));
    }
  }
  return xs;
}

std::vector<Constraint> doubly_stochastic_constraints(int dim) {
  require(dim >= 2, "dimension must be at least 2");
  const Eigen::Index N = static_cast<Eigen::Index>(dim) * dim;
  std::vector<Constraint> out;
  auto line = [dim, N](int index, bool rows, double orientation) {
    Vector coeff = Vector::Zero(N);
    for (int j = 0; j < dim; ++j) coeff(rows ? index * dim + j : j * dim + index) = orientation;
    Constraint c;
    c.value = [coeff, orientation](const Vector& x) { return coeff.dot(x) - orientation; };
    c.subgradient = [coeff](const Vector&) { return coeff; };
    return c;
  };
  // sum >= 1 is written as 1 - sum <= 0, sum <= 1 as sum - 1 <= 0.
  for (int i = 0; i < dim; ++i) out.push_back(line(i, true, -1.0));
  for (int i = 0; i < dim; ++i) out.push_back(line(i, true, 1.0));
  for (int i = 0; i < dim; ++i) out.push_back(line(i, false, -1.0));
  for (int i = 0; i < dim; ++i) out.push_back(line(i, false, 1.0));
  for (Eigen::Index k = 0; k < N; ++k) {
    Constraint c;
    c.value = [k](const Vector& x) { return -x(k); };
    c.subgradient = [k, N](const Vector&) {
      Vector g = Vector::Zero(N);
      g(k) = -1.0;
      return g;
    };
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LossRound> gen_permutation_stream(long horizon, int dim, std::uint64_t seed) {
  require(horizon >= 1, "horizon must be positive");
  const auto constraints = doubly_stochastic_constraints(dim);
  const Eigen::Index N = static_cast<Eigen::Index>(dim) * dim;
  auto rng = substream(seed, "permutation.targets");
  std::vector<int> perm(static_cast<std::size_t>(dim));

  std::vector<LossRound> rounds;
  rounds.reserve(static_cast<std::size_t>(horizon));
  for (long t = 0; t < horizon; ++t) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector y = Vector::Zero(N);
    for (int i = 0; i < dim; ++i) y(i * dim + perm[static_cast<std::size_t>(i)]) = 1.0;
    LossRound r = quadratic_round(std::move(y), Matrix::Identity(N, N));
    r.constraints = constraints;
    rounds.push_back(std::move(r));
  }
  return rounds;
}

void DispatchModel::validate() const {
  const Eigen::Index n = a.size();
  require(n >= 1 && b.size() == n && d.size() == n && e.size() == n && theta_max.size() == n,
          "dispatch coefficient vectors must share one length");
  require(a.minCoeff() > 0.0, "quadratic cost coefficients must be positive");
  require(d.minCoeff() >= 0.0, "emission coefficients must be non-negative");
  require(theta_max.minCoeff() > 0.0, "generator limits must be positive");
  require(xi >= 0.0, "demand penalty must be non-negative");
}

Box DispatchModel::box() const { return {Vector::Zero(theta_max.size()), theta_max}; }

double DispatchModel::generation_cost(const Vector& theta) const {
  return (0.5 * a.array() * theta.array().square() + b.array() * theta.array()).sum();
}

double DispatchModel::emission_excess(const Vector& theta) const {
  return (d.array() * theta.array().square() + e.array() * theta.array()).sum() - emission_cap;
}

std::vector<LossRound> gen_dispatch_stream(const DispatchModel& model, std::span<const double> demand) {
  model.validate();
  auto m = std::make_shared<const DispatchModel>(model);
  const Eigen::Index n = model.a.size();

  Constraint emission;
  emission.value = [m](const Vector& x) { return m->emission_excess(x); };
  emission.subgradient = [m](const Vector& x) -> Vector { return (2.0 * m->d.array() * x.array() + m->e.array()).matrix(); };

  Matrix H = Matrix(model.a.asDiagonal()) + 2.0 * model.xi * Matrix::Ones(n, n);

  std::vector<LossRound> rounds;
  rounds.reserve(demand.size());
  for (double dt : demand) {
    require(dt >= 0.0, "demand must be non-negative");
    LossRound r;
    r.value = [m, dt](const Vector& x) {
      const double gap = x.sum() - dt;
      return m->generation_cost(x) + m->xi * gap * gap;
    };
    r.gradient = [m, dt](const Vector& x) -> Vector {
      const double gap = x.sum() - dt;
      return (m->a.array() * x.array() + m->b.array() + 2.0 * m->xi * gap).matrix();
    };
    r.hessian = [H](const Vector&) { return H; };
    r.constraints = {emission};
    rounds.push_back(std::move(r));
  }
  return rounds;
}

std::vector<double> rescale(std::span<const double> values, double lo, double hi) {
  require(!values.empty(), "cannot rescale an empty series");
  require(lo <= hi, "rescale bounds must satisfy lo <= hi");
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double vmin = *min_it;
  const double span = *max_it - vmin;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = span > 0.0 ? lo + (hi - lo) * (values[i] - vmin) / span : 0.5 * (lo + hi);
  return out;
}

std::vector<double> synthetic_demand(long horizon, std::uint64_t seed) {
  require(horizon >= 1, "horizon must be positive");
  auto rng = substream(seed, "dispatch.demand");
  std::normal_distribution<double> noise(0.0, 0.08);
  constexpr double kSlotsPerDay = 288.0;
  std::vector<double> raw(static_cast<std::size_t>(horizon));
  for (long t = 0; t < horizon; ++t) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / kSlotsPerDay;
    raw[static_cast<std::size_t>(t)] = 1.0 - std::cos(phase) + 0.3 * std::sin(2.0 * phase) + noise(rng);
  }
  return rescale(raw);
}

std::vector<double> load_demand_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open demand file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("demand file is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  require(line == "t,demand", "demand file must start with the header t,demand");

  std::vector<double> raw;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "malformed demand row at line " + std::to_string(line_no));
    std::istringstream field(line.substr(comma + 1));
    double value = 0.0;
    field >> value;
    require(!field.fail() && (field >> std::ws).eof(), "malformed demand value at line " + std::to_string(line_no));
    require(std::isfinite(value) && value >= 0.0, "demand must be finite and non-negative");
    raw.push_back(value);
  }
  require(!raw.empty(), "demand file has no rows");
  return rescale(raw);
}

AdversarialStream gen_adversarial_stream(long horizon, double sigma_level, std::uint64_t seed) {
  require(horizon >= 1, "horizon must be positive");
  require(sigma_level > 0.0, "sigma level must be positive");
  auto rng = substream(seed, "adversarial.signs");
  std::bernoulli_distribution coin(0.5);
  AdversarialStream s;
  for (long t = 0; t < horizon; ++t) {
    const double eps = coin(rng) ? 2.0 * sigma_level : -2.0 * sigma_level;
    s.epsilons.push_back(eps);
    s.comparators.push_back(Vector::Constant(1, 0.5 * eps));
    s.rounds.push_back(quadratic_round(Vector::Constant(1, eps), Matrix::Constant(1, 1, 2.0)));
  }
  return s;
}

QuadraticStream gen_quadratic_stream(long horizon, const QuadraticStreamOptions& o, std::uint64_t seed) {
  require(horizon >= 1, "horizon must be positive");
  require(o.dim >= 1 && o.segments >= 1, "dimension and segment count must be positive");
  require(o.ell > 0.0 && o.ell <= o.u, "curvature bounds must satisfy 0 < ell <= u");
  require(o.noise >= 0.0 && o.target_radius > 0.0, "noise and radius must be admissible");
  auto centre_rng = substream(seed, "quadratic.centres");
  auto noise_rng = substream(seed, "quadratic.noise");
  auto curvature_rng = substream(seed, "quadratic.curvature");
  std::uniform_real_distribution<double> spectrum(o.ell, o.u);

  QuadraticStream s;
  Vector centre;
  for (long t = 0; t < horizon; ++t) {
    const long segment = t * o.segments / horizon;
    if (t == 0 || segment != (t - 1) * o.segments / horizon) centre = uniform_in_ball(o.dim, o.target_radius, centre_rng);
    Vector y = centre;
    if (o.noise > 0.0) y = project_ball(y + o.noise * gaussian_vector(o.dim, noise_rng), o.target_radius);
    Matrix A;
    if (o.ell == o.u) {
      A = o.ell * Matrix::Identity(o.dim, o.dim);
    } else {
      const Matrix Q = random_orthogonal(o.dim, curvature_rng);
      Vector values(o.dim);
      for (int i = 0; i < o.dim; ++i) values(i) = spectrum(curvature_rng);
      A = reassemble(Q, values);
    }
    s.targets.push_back(y);
    s.curvatures.push_back(A);
    s.rounds.push_back(quadratic_round(std::move(y), std::move(A)));
  }
  return s;
}

}  // namespace oco
