#include "oco/experiments.hpp"

#include "oco/constrained.hpp"
#include "oco/gd.hpp"
#include "oco/meta.hpp"
#include "oco/ons.hpp"
#include "oco/oracle.hpp"
#include "oco/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

namespace oco {

namespace {

const std::map<std::string, std::vector<std::string>>& rosters() {
  static const std::map<std::string, std::vector<std::string>> r = {
      {"toy", {"clipped", "mahdavi"}},
      {"dsm", {"clipped", "strong", "mahdavi"}},
      {"dispatch", {"clipped", "strong", "mahdavi"}},
      {"pca", {"adaptive", "static", "ftl"}},
      {"tracking", {"discounted", "classic", "newton", "meta"}},
      {"adversarial", {"discounted", "classic"}},
  };
  return r;
}

// Running totals that turn per-round numbers into trace rows.
class RowBuilder {
 public:
  explicit RowBuilder(CellResult& cell) : cell_(cell) {}

  void add(double loss, double comparator_loss, double violation, double step) {
    cell_.cumulative_loss += loss;
    cell_.comparator_loss += comparator_loss;
    const double clipped = positive_part(violation);
    cell_.clipped_sum += clipped;
    cell_.clipped_square_sum += clipped * clipped;
    cell_.signed_sum += violation;
    cell_.max_clip = std::max(cell_.max_clip, clipped);
    TraceRow row;
    row.t = static_cast<long>(cell_.rows.size()) + 1;
    row.loss = loss;
    row.cum_loss = cell_.cumulative_loss;
    row.regret = cell_.cumulative_loss - cell_.comparator_loss;
    row.violation_signed = violation;
    row.violation_clipped = clipped;
    row.step_size = step;
    cell_.rows.push_back(row);
    cell_.regret = row.regret;
  }

 private:
  CellResult& cell_;
};

// ---------------------------------------------------------------------------
// Constrained problems: toy, dsm, dispatch.

struct ConstrainedProblem {
  std::vector<LossRound> rounds;  // a single (aggregated) constraint per round
  FeasibleSet set;
  CurvatureProfile profile;
  Vector comparator;
};

ConstrainedProblem toy_problem(const ExperimentConfig& cfg, std::uint64_t seed) {
  ConstrainedProblem p;
  p.rounds = gen_toy_stream(cfg.horizon, seed);
  p.set = Ball{1.0};
  p.profile.grad_bound = std::sqrt(2.0);
  p.profile.diameter = 2.0;
  p.profile.radius = 1.0;
  p.profile.constraint_count = 1;
  p.comparator = offline_oracle(p.rounds, L1Ball{1.0}, 2).point;
  return p;
}

ConstrainedProblem dsm_problem(const ExperimentConfig& cfg, std::uint64_t seed) {
  ConstrainedProblem p;
  p.rounds = gen_permutation_stream(cfg.horizon, cfg.dim, seed);
  const Constraint aggregate = max_aggregate(doubly_stochastic_constraints(cfg.dim));
  for (auto& r : p.rounds) r.constraints = {aggregate};
  const double n = static_cast<double>(cfg.dim);
  p.set = Ball{std::sqrt(n)};
  p.profile.grad_bound = 2.0 * std::sqrt(n);
  p.profile.diameter = 2.0 * std::sqrt(n);
  p.profile.radius = std::sqrt(n);
  p.profile.strong_convexity = 1.0;
  p.profile.constraint_count = 1;
  p.comparator = offline_oracle(p.rounds, p.set, cfg.dim * cfg.dim).point;
  return p;
}

ConstrainedProblem dispatch_problem(const ExperimentConfig& cfg, std::uint64_t seed) {
  const DispatchModel& m = cfg.dispatch;
  m.validate();
  std::vector<double> demand = cfg.demand.empty() ? synthetic_demand(cfg.horizon, seed) : cfg.demand;
  require(demand.size() >= static_cast<std::size_t>(cfg.horizon), "demand series is shorter than the horizon");
  demand.resize(static_cast<std::size_t>(cfg.horizon));

  ConstrainedProblem p;
  p.rounds = gen_dispatch_stream(m, demand);
  const Box box = m.box();
  p.set = box;

  const auto [dmin, dmax] = std::minmax_element(demand.begin(), demand.end());
  const double gap = std::max(std::abs(m.theta_max.sum() - *dmin), *dmax);
  const Vector cost_grad = (m.a.array() * m.theta_max.array() + m.b.array().abs() + 2.0 * m.xi * gap).matrix();
  const Vector emission_grad = (2.0 * m.d.array() * m.theta_max.array() + m.e.array().abs()).matrix();
  const Matrix H = Matrix(m.a.asDiagonal()) + 2.0 * m.xi * Matrix::Ones(m.a.size(), m.a.size());

  p.profile.grad_bound = std::max(cost_grad.norm(), emission_grad.norm());
  p.profile.radius = m.theta_max.norm();
  p.profile.diameter = std::max(1.0, m.theta_max.norm());
  p.profile.strong_convexity = symmetric_eigen(H).values.minCoeff();
  p.profile.constraint_count = 1;
  p.comparator = offline_oracle(p.rounds, p.set, m.a.size()).point;
  return p;
}

void run_constrained(const ExperimentConfig& cfg, const ConstrainedProblem& p, const std::string& algorithm,
                     CellResult& cell) {
  const Eigen::Index dim = p.comparator.size();
  const ClippedParams params = clipped_experiment_params(p.profile, cfg.horizon, cfg.kappa, cfg.beta);
  ClippedState state = ClippedState::start(p.set, dim, 1);
  RowBuilder rows(cell);
  for (const auto& r : p.rounds) {
    const Vector theta = state.iterate;
    const double loss = r.value(theta);
    const double g = r.constraints.front().value(theta);
    if (algorithm == "clipped") state = convex_round(state, r, params, p.set);
    else if (algorithm == "strong") state = strongly_convex_round(state, r, p.profile, p.set);
    else state = mahdavi_round(state, r, params, p.set);
    if (!std::isfinite(loss) || !state.iterate.allFinite()) throw NumericalError("non-finite iterate or loss");
    rows.add(loss, r.value(p.comparator), g, state.last_step);
  }
  cell.comparator = p.comparator;
}

// ---------------------------------------------------------------------------
// Unconstrained dynamic problems: tracking, adversarial.

struct DynamicProblem {
  std::vector<LossRound> rounds;
  std::vector<Vector> comparators;
  FeasibleSet set;
  CurvatureProfile profile;
};

DynamicProblem tracking_problem(const ExperimentConfig& cfg, std::uint64_t seed) {
  QuadraticStreamOptions o;
  o.dim = cfg.dim;
  o.segments = 3;
  QuadraticStream s = gen_quadratic_stream(cfg.horizon, o, seed);
  DynamicProblem p;
  p.rounds = std::move(s.rounds);
  p.comparators = std::move(s.targets);
  p.set = Ball{1.0};
  p.profile.diameter = 2.0;
  p.profile.radius = 1.0;
  p.profile.grad_bound = 2.0 * o.u;
  p.profile.strong_convexity = o.ell;
  p.profile.smoothness = o.u;
  return p;
}

DynamicProblem adversarial_problem(const ExperimentConfig& cfg, std::uint64_t seed) {
  AdversarialStream s = gen_adversarial_stream(cfg.horizon, cfg.sigma_level, seed);
  DynamicProblem p;
  p.rounds = std::move(s.rounds);
  p.comparators = std::move(s.comparators);
  const double radius = 2.0 * cfg.sigma_level;
  p.set = Ball{radius};
  p.profile.diameter = std::max(1.0, 2.0 * radius);
  p.profile.radius = radius;
  p.profile.grad_bound = 2.0 * 2.0 * radius;
  p.profile.strong_convexity = 2.0;
  p.profile.smoothness = 2.0;
  return p;
}

void run_dynamic(const ExperimentConfig& cfg, const DynamicProblem& p, const std::string& algorithm,
                 CellResult& cell) {
  const Eigen::Index dim = p.comparators.front().size();
  const Vector start = center_of(p.set, dim);
  const double gamma =
      cfg.gamma.value_or(gamma_for_path(cfg.horizon, p.profile.diameter, path_length(p.comparators)));
  RowBuilder rows(cell);

  auto emit = [&](std::size_t t, const Vector& theta, double step) {
    const double loss = p.rounds[t].value(theta);
    if (!std::isfinite(loss)) throw NumericalError("non-finite loss");
    rows.add(loss, p.rounds[t].value(p.comparators[t]), 0.0, step);
  };

  if (algorithm == "discounted" || algorithm == "classic") {
    const bool classic = algorithm == "classic";
    GdLearner learner(GdState::start(start, classic ? 1.0 : std::min(gamma, 1.0 - 1e-12),
                                     classic ? StepRule::Classic : StepRule::StronglyConvex),
                      p.set, p.profile);
    for (std::size_t t = 0; t < p.rounds.size(); ++t) {
      const double step = learner.current_step();
      const Vector theta = learner.iterate();
      emit(t, theta, step);
      learner.update(p.rounds[t].gradient(theta));
    }
  } else if (algorithm == "newton") {
    NewtonLearner learner(NewtonState::start(start, gamma, 1.0, 1e-8, NewtonMode::Full), p.set);
    for (std::size_t t = 0; t < p.rounds.size(); ++t) {
      const Vector theta = learner.iterate();
      emit(t, theta, 1.0 / learner.state().eta);
      learner.update(p.rounds[t].gradient(theta), p.rounds[t].hessian(theta));
    }
  } else {
    MetaState meta = make_gd_meta(build_discount_grid(cfg.horizon, p.profile.diameter), start, p.set, p.profile,
                                  lambda_for(p.profile, LossFamily::StronglyConvex));
    for (std::size_t t = 0; t < p.rounds.size(); ++t) {
      const MetaOutcome out = meta_round(meta, p.rounds[t]);
      emit(t, out.played, 0.0);
    }
  }
}

// ---------------------------------------------------------------------------
// Online PCA.

Matrix top_projection(const Matrix& C, int k) {
  const SymmetricEigen eig = symmetric_eigen(C);
  const Matrix U = eig.vectors.rightCols(k);
  return U * U.transpose();
}

void run_pca(const ExperimentConfig& cfg, const std::string& algorithm, std::uint64_t seed, CellResult& cell) {
  const int n = cfg.pca_n;
  const int k = cfg.pca_k;
  const std::vector<Vector> xs = gen_subspace_stream(cfg.horizon, n, cfg.pca_rank, cfg.pca_segments, seed);

  Matrix total = Matrix::Zero(n, n);
  for (const auto& x : xs) total.noalias() += x * x.transpose();
  const Matrix best = top_projection(total, k);
  auto comparator_loss = [&](const Vector& x) { return (x - best * x).squaredNorm(); };

  RowBuilder rows(cell);
  if (algorithm == "ftl") {
    Matrix seen = Matrix::Zero(n, n);
    for (const auto& x : xs) {
      const Matrix P = top_projection(seen, k);
      rows.add((x - P * x).squaredNorm(), comparator_loss(x), 0.0, 0.0);
      seen.noalias() += x * x.transpose();
    }
    return;
  }
  const double alpha = algorithm == "adaptive" ? cfg.pca_alpha : 0.0;
  PcaState state = PcaState::start(n, k, cfg.pca_eta, alpha, substream_seed(seed, "pca." + algorithm));
  for (const auto& x : xs) {
    const PcaOutcome out = pca_round(state, x);
    rows.add(out.expected_loss, comparator_loss(x), 0.0, cfg.pca_eta);
  }
}

// ---------------------------------------------------------------------------
// Output.

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out << content;
  out.close();
  if (!out) throw IoError("failed to write output file: " + path.string());
}

std::string trace_csv(const CellResult& cell) {
  std::string s = "t,loss,cum_loss,regret,violation_signed,violation_clipped,step_size\n";
  for (const auto& r : cell.rows) {
    s += std::to_string(r.t);
    for (double v : {r.loss, r.cum_loss, r.regret, r.violation_signed, r.violation_clipped, r.step_size}) {
      s += ',';
      s += format_number(v);
    }
    s += '\n';
  }
  return s;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"toy", "dsm", "dispatch", "pca", "tracking", "adversarial"};
  return ids;
}

std::vector<std::string> default_roster(const std::string& experiment) {
  const auto it = rosters().find(experiment);
  if (it == rosters().end()) throw InvalidArgument("unknown experiment id: " + experiment);
  return it->second;
}

long default_horizon(const std::string& experiment) {
  static const std::map<std::string, long> h = {{"toy", 8000},     {"dsm", 4000},     {"dispatch", 2880},
                                                {"pca", 600},      {"tracking", 600}, {"adversarial", 1000}};
  const auto it = h.find(experiment);
  if (it == h.end()) throw InvalidArgument("unknown experiment id: " + experiment);
  return it->second;
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.horizon = default_horizon(experiment);
  c.algorithms = default_roster(experiment);
  c.seeds = {1};
  return c;
}

void ExperimentConfig::validate() const {
  const auto roster = default_roster(experiment);
  require(horizon >= 2, "horizon must be at least 2");
  require(!seeds.empty(), "at least one seed is required");
  require(!algorithms.empty(), "algorithm roster is empty");
  for (const auto& a : algorithms)
    require(std::find(roster.begin(), roster.end(), a) != roster.end(),
            "algorithm '" + a + "' is not available for experiment " + experiment);
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  require(kappa > 0.0 && kappa < 1.0, "kappa must lie in (0,1)");
  require(!gamma || (*gamma > 0.0 && *gamma <= 1.0), "gamma must lie in (0,1]");
  require(jobs >= 1, "jobs must be at least 1");
  require(dim >= 2, "dim must be at least 2");
  require(sigma_level > 0.0, "sigma level must be positive");
  require(pca_k >= 1 && pca_k < pca_n, "PCA rank must satisfy 1 <= k < n");
  require(pca_alpha >= 0.0 && pca_alpha <= 1.0, "PCA fixed-share rate must lie in [0,1]");
  require(pca_eta > 0.0, "PCA learning rate must be positive");
  if (experiment == "pca") require(horizon % pca_segments == 0, "PCA horizon must be divisible by the segment count");
  if (experiment == "dispatch") {
    dispatch.validate();
    require(demand.empty() || demand.size() >= static_cast<std::size_t>(horizon),
            "demand series is shorter than the horizon");
  }
}

CellResult run_cell(const ExperimentConfig& config, const std::string& algorithm, std::uint64_t seed) {
  const auto roster = default_roster(config.experiment);
  require(std::find(roster.begin(), roster.end(), algorithm) != roster.end(),
          "algorithm '" + algorithm + "' is not available for experiment " + config.experiment);
  CellResult cell;
  cell.algorithm = algorithm;
  cell.seed = seed;
  cell.horizon = config.horizon;
  cell.rows.reserve(static_cast<std::size_t>(config.horizon));
  const auto started = std::chrono::steady_clock::now();

  const std::string& e = config.experiment;
  if (e == "toy") run_constrained(config, toy_problem(config, seed), algorithm, cell);
  else if (e == "dsm") run_constrained(config, dsm_problem(config, seed), algorithm, cell);
  else if (e == "dispatch") run_constrained(config, dispatch_problem(config, seed), algorithm, cell);
  else if (e == "tracking") run_dynamic(config, tracking_problem(config, seed), algorithm, cell);
  else if (e == "adversarial") run_dynamic(config, adversarial_problem(config, seed), algorithm, cell);
  else run_pca(config, algorithm, seed, cell);

  cell.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return cell;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Job {
    std::string algorithm;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& a : config.algorithms)
    for (auto s : config.seeds) jobs.push_back({a, s});

  ExperimentResult result;
  result.cells.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        result.cells[i] = run_cell(config, jobs[i].algorithm, jobs[i].seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  if (config.out_dir.empty()) return result;

  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory: " + config.out_dir);

  std::string summary =
      "algorithm,seed,horizon,cum_loss,comparator_loss,final_regret,clipped_sum,clipped_square_sum,signed_sum,"
      "max_clip\n";
  std::string timing = "algorithm,seed,runtime_ms\n";
  for (const auto& cell : result.cells) {
    const fs::path trace = dir / (config.experiment + "_" + cell.algorithm + "_seed" + std::to_string(cell.seed) + ".csv");
    write_file(trace, trace_csv(cell));
    result.files.push_back(trace.string());
    summary += cell.algorithm + "," + std::to_string(cell.seed) + "," + std::to_string(cell.horizon);
    for (double v : {cell.cumulative_loss, cell.comparator_loss, cell.regret, cell.clipped_sum,
                     cell.clipped_square_sum, cell.signed_sum, cell.max_clip})
      summary += "," + format_number(v);
    summary += "\n";
    timing += cell.algorithm + "," + std::to_string(cell.seed) + "," + format_number(cell.runtime_ms) + "\n";
  }
  const fs::path summary_path = dir / (config.experiment + "_summary.csv");
  const fs::path timing_path = dir / (config.experiment + "_timing.csv");
  write_file(summary_path, summary);
  write_file(timing_path, timing);
  result.files.push_back(summary_path.string());
  result.files.push_back(timing_path.string());
  return result;
}

}  // namespace oco
