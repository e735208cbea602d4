#include "oco/acceptance.hpp"

#include "oco/constrained.hpp"
#include "oco/experiments.hpp"
#include "oco/gd.hpp"
#include "oco/geometry.hpp"
#include "oco/meta.hpp"
#include "oco/ons.hpp"
#include "oco/oracle.hpp"
#include "oco/spectral.hpp"
#include "oco/streams.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace oco {

namespace {

using Clock = std::chrono::steady_clock;

bool full(AcceptanceScale s) { return s == AcceptanceScale::Full; }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Least-squares slope of log(y) against log(x); zero when y never grows.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) return 0.0;
  if (*std::min_element(ys.begin(), ys.end()) <= 0.0) return std::numeric_limits<double>::infinity();
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]) / n;
    my += std::log(ys[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

Vector uniform_in_ball(Eigen::Index n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return radius * std::pow(unif(rng), 1.0 / static_cast<double>(n)) * v / v.norm();
}

// ---------------------------------------------------------------------------

CriterionResult meta_bound(AcceptanceScale scale) {
  const int seeds = full(scale) ? 10 : 3;
  const long T = full(scale) ? 2000 : 500;
  const double lambda = 0.25;

  CurvatureProfile profile;
  profile.grad_bound = 2.0;
  profile.diameter = 2.0;
  profile.strong_convexity = 1.0;
  profile.smoothness = 1.0;
  profile.exp_concavity = lambda;
  const DiscountGrid grid = build_discount_grid(T, profile.diameter);

  double worst = -std::numeric_limits<double>::infinity();
  for (int seed = 1; seed <= seeds; ++seed) {
    QuadraticStreamOptions o;
    o.dim = 5;
    o.segments = 4;
    o.noise = 0.1;
    const QuadraticStream s = gen_quadratic_stream(T, o, static_cast<std::uint64_t>(seed));
    std::vector<MetaState> metas;
    metas.push_back(make_newton_meta(grid, Vector::Zero(5), Ball{1.0}, eta_for_case(profile, NewtonCase::ExpConcave),
                                     practical_epsilon(profile), NewtonMode::Quasi, lambda));
    metas.push_back(make_gd_meta(grid, Vector::Zero(5), Ball{1.0}, profile, lambda));
    for (auto& meta : metas) {
      double cum_meta = 0.0;
      Vector cum_expert = Vector::Zero(static_cast<Eigen::Index>(grid.size()));
      for (const auto& r : s.rounds) {
        const MetaOutcome out = meta_round(meta, r);
        cum_meta += r.value(out.played);
        cum_expert += out.expert_losses;
        for (std::size_t i = 0; i < grid.size(); ++i)
          worst = std::max(worst, cum_meta - cum_expert(static_cast<Eigen::Index>(i)) -
                                      expert_tracking_bound(grid.priors[i], lambda));
      }
    }
  }
  CriterionResult r;
  r.passed = worst <= 1e-6;
  r.detail = "max excess over bound " + fmt(worst) + " (need <= 1e-6)";
  return r;
}

CriterionResult rls_equivalence(AcceptanceScale scale) {
  const long T = full(scale) ? 500 : 200;
  const double gamma = 0.9;
  QuadraticStreamOptions o;
  o.dim = 3;
  o.segments = 10;
  o.noise = 0.3;
  const QuadraticStream s = gen_quadratic_stream(T, o, 11);

  GdLearner gd(GdState::start(Vector::Zero(3), gamma, StepRule::DiscountedRls), Unbounded{}, CurvatureProfile{});
  NewtonLearner ons(NewtonState::start(Vector::Zero(3), gamma, 1.0, 1e-8, NewtonMode::Full), Unbounded{});
  Vector recursion = Vector::Zero(3);
  Vector weighted_sum = Vector::Zero(3);
  double weight_total = 0.0;

  double gd_err = 0.0, argmin_err = 0.0, ons_err = 0.0;
  for (long t = 1; t <= T; ++t) {
    const LossRound& r = s.rounds[static_cast<std::size_t>(t - 1)];
    const Vector& y = s.targets[static_cast<std::size_t>(t - 1)];
    const double gt = std::pow(gamma, static_cast<double>(t));
    recursion = (gamma - gt) / (1.0 - gt) * recursion + (1.0 - gamma) / (1.0 - gt) * y;
    weighted_sum = gamma * weighted_sum + y;
    weight_total = gamma * weight_total + 1.0;

    gd.update(r.gradient(gd.iterate()));
    ons.update(r.gradient(ons.iterate()), r.hessian(ons.iterate()));
    gd_err = std::max(gd_err, (gd.iterate() - recursion).cwiseAbs().maxCoeff());
    argmin_err = std::max(argmin_err, (gd.iterate() - weighted_sum / weight_total).cwiseAbs().maxCoeff());
    ons_err = std::max(ons_err, (ons.iterate() - recursion).cwiseAbs().maxCoeff());
  }
  CriterionResult r;
  r.passed = gd_err <= 1e-10 && argmin_err <= 1e-10 && ons_err <= 1e-6;
  r.detail = "gd vs recursion " + fmt(gd_err) + ", gd vs discounted argmin " + fmt(argmin_err) +
             ", full Newton vs recursion " + fmt(ons_err);
  return r;
}

CriterionResult contraction(AcceptanceScale scale) {
  const long T = full(scale) ? 1000 : 300;
  const int seeds = full(scale) ? 5 : 2;
  const double gamma = gamma_for_beta(T, 0.5);
  double equality_err = 0.0;
  double inequality_excess = -std::numeric_limits<double>::infinity();

  for (int seed = 1; seed <= seeds; ++seed) {
    QuadraticStreamOptions iso;
    iso.dim = 4;
    iso.segments = 8;
    iso.noise = 0.2;
    const QuadraticStream a = gen_quadratic_stream(T, iso, static_cast<std::uint64_t>(100 + seed));
    GdLearner rls(GdState::start(Vector::Zero(4), gamma, StepRule::DiscountedRls), Ball{1.0}, CurvatureProfile{});
    for (long t = 1; t <= T; ++t) {
      const Vector& y = a.targets[static_cast<std::size_t>(t - 1)];
      const Vector before = rls.iterate();
      rls.update(a.rounds[static_cast<std::size_t>(t - 1)].gradient(before));
      const double gt = std::pow(gamma, static_cast<double>(t));
      const Vector predicted = (gamma - gt) / (1.0 - gt) * (before - y);
      equality_err = std::max(equality_err, (rls.iterate() - y - predicted).norm());
    }

    QuadraticStreamOptions aniso = iso;
    aniso.ell = 0.5;
    aniso.u = 2.0;
    const QuadraticStream b = gen_quadratic_stream(T, aniso, static_cast<std::uint64_t>(200 + seed));
    CurvatureProfile profile;
    profile.grad_bound = 4.0;
    profile.diameter = 2.0;
    profile.strong_convexity = aniso.ell;
    profile.smoothness = aniso.u;
    GdLearner gd(GdState::start(Vector::Zero(4), gamma, StepRule::SmoothStronglyConvex), Ball{1.0}, profile);
    const double rate =
        std::sqrt(1.0 - aniso.ell * (1.0 - gamma) / (aniso.u * (1.0 - gamma) + aniso.ell * gamma));
    for (long t = 1; t <= T; ++t) {
      const Vector& y = b.targets[static_cast<std::size_t>(t - 1)];
      const Vector before = gd.iterate();
      gd.update(b.rounds[static_cast<std::size_t>(t - 1)].gradient(before));
      inequality_excess = std::max(inequality_excess, (gd.iterate() - y).norm() - rate * (before - y).norm());
    }
  }
  CriterionResult r;
  r.passed = equality_err <= 1e-9 && inequality_excess <= 1e-9;
  r.detail = "quadratic contraction equality error " + fmt(equality_err) + ", smooth contraction excess " +
             fmt(inequality_excess);
  return r;
}

CriterionResult regret_growth(AcceptanceScale scale) {
  const int seeds = full(scale) ? 5 : 3;
  const long long_t = 2000;
  const long short_t = 250;
  double long_total = 0.0, short_total = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    QuadraticStreamOptions o;
    o.dim = 3;
    o.ell = 0.5;
    o.u = 2.0;
    o.noise = 0.3;
    const QuadraticStream s = gen_quadratic_stream(long_t, o, static_cast<std::uint64_t>(300 + seed));
    NewtonLearner learner(NewtonState::start(Vector::Zero(3), 1.0, 1.0, 1.0, NewtonMode::Full), Ball{1.0});
    double cum = 0.0, cum_short = 0.0;
    for (long t = 0; t < long_t; ++t) {
      const LossRound& r = s.rounds[static_cast<std::size_t>(t)];
      const Vector x = learner.iterate();
      cum += r.value(x);
      if (t + 1 == short_t) cum_short = cum;
      learner.update(r.gradient(x), r.hessian(x));
    }
    const std::span<const LossRound> all(s.rounds);
    const double best_long = offline_oracle(all, Ball{1.0}, 3).average_loss * static_cast<double>(long_t);
    const double best_short =
        offline_oracle(all.first(static_cast<std::size_t>(short_t)), Ball{1.0}, 3).average_loss *
        static_cast<double>(short_t);
    long_total += cum - best_long;
    short_total += cum_short - best_short;
  }
  const double ratio = long_total / short_total;
  CriterionResult r;
  r.passed = short_total > 0.0 && ratio <= 1.9;
  r.detail = "mean regret(2000)=" + fmt(long_total / seeds) + ", regret(250)=" + fmt(short_total / seeds) +
             ", ratio " + fmt(ratio) + " (need <= 1.9)";
  return r;
}

CriterionResult tracking(AcceptanceScale scale) {
  ExperimentConfig cfg = default_config("tracking");
  cfg.horizon = full(scale) ? 600 : 300;
  const int seeds = full(scale) ? 10 : 4;
  double tuned = 0.0, classic = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    tuned += run_cell(cfg, "discounted", static_cast<std::uint64_t>(seed)).regret / seeds;
    classic += run_cell(cfg, "classic", static_cast<std::uint64_t>(seed)).regret / seeds;
  }
  CriterionResult r;
  r.passed = tuned <= 0.5 * classic;
  r.detail = "mean dynamic regret tuned " + fmt(tuned) + " vs classic " + fmt(classic) + " (ratio " +
             fmt(tuned / classic) + ", need <= 0.5)";
  return r;
}

CriterionResult geometry(AcceptanceScale scale) {
  const int trials = full(scale) ? 1000 : 200;
  const int projection_trials = full(scale) ? 100 : 30;
  std::mt19937_64 rng(2024);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double recon_err = 0.0, cap_err = 0.0;
  bool corner_count_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    const double spike = 1.0 + 4.0 * unif(rng);
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = std::pow(expo(rng), spike);
    w /= w.sum();
    const CappedSimplexVector capped = cap_probability(w, d);
    cap_err = std::max({cap_err, std::abs(capped.weights.sum() - 1.0),
                        capped.weights.maxCoeff() - 1.0 / d, -capped.weights.minCoeff()});
    const MixtureDecomposition mix = mixture_decompose(capped);
    corner_count_ok = corner_count_ok && mix.size() <= static_cast<std::size_t>(n);
    Vector rebuilt = Vector::Zero(n);
    for (const auto& c : mix) rebuilt += c.probability * c.corner.dense();
    recon_err = std::max(recon_err, (rebuilt - capped.weights).cwiseAbs().maxCoeff());
  }

  const Matrix P = Eigen::Vector2d(4.0, 1.0).asDiagonal();
  const PnormProjection hand = project_pnorm_ball(P, Eigen::Vector2d(2.0, 0.0), 1.0);
  const double hand_err = std::max((hand.point - Eigen::Vector2d(1.0, 0.0)).cwiseAbs().maxCoeff(),
                                   std::abs(hand.multiplier - 4.0));

  std::normal_distribution<double> normal(0.0, 1.0);
  int beaten = 0;
  for (int trial = 0; trial < projection_trials; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Matrix B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = normal(rng);
    const Matrix Pn = B * B.transpose() + 0.1 * Matrix::Identity(n, n);
    Vector y(n);
    for (int i = 0; i < n; ++i) y(i) = 2.0 * normal(rng);
    const double R = 0.5 + 1.5 * unif(rng);
    const Vector z = project_pnorm_ball(Pn, y, R).point;
    auto objective = [&](const Vector& v) { return (v - y).dot(Pn * (v - y)); };
    const double best = objective(z);
    bool ok = z.norm() <= R + 1e-9;
    for (int c = 0; c < 100 && ok; ++c) ok = best <= objective(uniform_in_ball(n, R, rng)) + 1e-9;
    beaten += ok ? 0 : 1;
  }

  CriterionResult r;
  r.passed = recon_err <= 1e-9 && corner_count_ok && cap_err <= 1e-12 && hand_err <= 1e-8 && beaten == 0;
  r.detail = "reconstruction " + fmt(recon_err) + ", cap invariants " + fmt(cap_err) + ", corner counts " +
             (corner_count_ok ? "ok" : "exceeded") + ", hand case " + fmt(hand_err) + ", projection trials lost " +
             std::to_string(beaten);
  return r;
}

CriterionResult adaptive_pca(AcceptanceScale scale) {
  const int seeds = full(scale) ? 10 : 5;
  const long T = full(scale) ? 600 : 300;
  const int n = 20, k = 2, need = (4 * seeds + 4) / 5;
  int beats_static = 0, beats_ftl = 0;
  double trace_err = 0.0, eig_low = 0.0, eig_high = -1.0;
  const double cap = 1.0 / (n - k);

  for (int seed = 1; seed <= seeds; ++seed) {
    const auto s = static_cast<std::uint64_t>(seed);
    const std::vector<Vector> xs = gen_subspace_stream(T, n, 2, 3, s);
    PcaState adaptive = PcaState::start(n, k, 1.0, 1e-5, substream_seed(s, "pca.adaptive"));
    PcaState fixed = PcaState::start(n, k, 1.0, 0.0, substream_seed(s, "pca.static"));
    double loss_adaptive = 0.0, loss_static = 0.0, loss_ftl = 0.0;
    Matrix seen = Matrix::Zero(n, n);
    for (const auto& x : xs) {
      loss_adaptive += pca_round(adaptive, x).expected_loss;
      loss_static += pca_round(fixed, x).expected_loss;
      const Matrix U = symmetric_eigen(seen).vectors.rightCols(k);
      loss_ftl += (x - U * (U.transpose() * x)).squaredNorm();
      seen.noalias() += x * x.transpose();
      for (const PcaState* st : {&adaptive, &fixed}) {
        const Vector ev = symmetric_eigen(st->W.matrix).values;
        trace_err = std::max(trace_err, std::abs(st->W.matrix.trace() - 1.0));
        eig_low = std::min(eig_low, ev.minCoeff());
        eig_high = std::max(eig_high, ev.maxCoeff() - cap);
      }
    }
    beats_static += loss_adaptive < loss_static ? 1 : 0;
    beats_ftl += loss_adaptive < loss_ftl ? 1 : 0;
  }
  CriterionResult r;
  r.passed = beats_static >= need && beats_ftl >= need && trace_err <= 1e-9 && eig_low >= -1e-12 &&
             eig_high <= 1e-9;
  r.detail = "adaptive beats static in " + std::to_string(beats_static) + "/" + std::to_string(seeds) +
             ", beats FTL in " + std::to_string(beats_ftl) + "/" + std::to_string(seeds) + " (need " +
             std::to_string(need) + "); trace error " + fmt(trace_err) + ", min eigenvalue " + fmt(eig_low) +
             ", cap excess " + fmt(eig_high);
  return r;
}

CriterionResult clipped_toy(AcceptanceScale) {
  ExperimentConfig cfg = default_config("toy");
  cfg.horizon = 8000;
  const CellResult clipped = run_cell(cfg, "clipped", 1);
  const CellResult mahdavi = run_cell(cfg, "mahdavi", 1);
  double late_clipped = 0.0, late_mahdavi = 0.0;
  for (std::size_t t = 1000; t < clipped.rows.size(); ++t) {
    late_clipped = std::max(late_clipped, clipped.rows[t].violation_clipped);
    late_mahdavi = std::max(late_mahdavi, mahdavi.rows[t].violation_clipped);
  }
  const bool a = late_clipped < 0.05 && late_clipped < late_mahdavi / 3.0;

  std::vector<double> horizons = {1000.0, 4000.0, 16000.0};
  std::vector<double> squares;
  for (double h : horizons) {
    cfg.horizon = static_cast<long>(h);
    squares.push_back(run_cell(cfg, "clipped", 1).clipped_square_sum);
  }
  const double slope = loglog_slope(horizons, squares);
  const bool b = slope <= 0.6;
  const bool c = std::abs(mahdavi.signed_sum) < 0.1 * mahdavi.clipped_sum;

  CriterionResult r;
  r.passed = a && b && c;
  r.detail = std::string("(a) late max clip ") + fmt(late_clipped) + " vs baseline " + fmt(late_mahdavi) +
             (a ? " ok" : " FAIL") + "; (b) square-clip slope " + fmt(slope) + (b ? " ok" : " FAIL") +
             "; (c) baseline |sum g| " + fmt(std::abs(mahdavi.signed_sum)) + " vs sum [g]+ " +
             fmt(mahdavi.clipped_sum) + (c ? " ok" : " FAIL");
  return r;
}

CriterionResult doubly_stochastic(AcceptanceScale scale) {
  ExperimentConfig cfg = default_config("dsm");
  cfg.horizon = full(scale) ? 4000 : 1000;
  cfg.dim = 5;
  const CellResult strong = run_cell(cfg, "strong", 1);
  const CellResult clipped = run_cell(cfg, "clipped", 1);
  std::vector<double> horizons, sums;
  double running = 0.0;
  for (std::size_t t = 0; t < strong.rows.size(); ++t) {
    running += strong.rows[t].violation_clipped;
    const long h = static_cast<long>(t) + 1;
    if (h == cfg.horizon / 4 || h == cfg.horizon / 2 || h == cfg.horizon) {
      horizons.push_back(static_cast<double>(h));
      sums.push_back(running);
    }
  }
  const double slope = loglog_slope(horizons, sums);
  CriterionResult r;
  r.passed = strong.regret <= clipped.regret && slope <= 0.75;
  r.detail = "strong regret " + fmt(strong.regret) + " vs clipped " + fmt(clipped.regret) +
             ", strong violation slope " + fmt(slope) + " (need <= 0.75)";
  return r;
}

CriterionResult dispatch(AcceptanceScale) {
  ExperimentConfig cfg = default_config("dispatch");
  cfg.horizon = 2880;
  const CellResult cell = run_cell(cfg, "clipped", 1);
  double late = 0.0;
  for (std::size_t t = 200; t < cell.rows.size(); ++t) late = std::max(late, cell.rows[t].violation_clipped);
  const double T = static_cast<double>(cfg.horizon);
  const double average = cell.cumulative_loss / T;
  const double oracle = cell.comparator_loss / T;
  const double gap = std::abs(average - oracle) / oracle;
  CriterionResult r;
  r.passed = late <= 2.0 && gap <= 0.1;
  r.detail = "max [g]+ after t=200 " + fmt(late) + " (need <= 2), running average " + fmt(average) +
             " vs oracle " + fmt(oracle) + " (gap " + fmt(100.0 * gap) + "%)";
  return r;
}

CriterionResult exp_concavity(AcceptanceScale scale) {
  const int functions = full(scale) ? 100 : 30;
  const int segments = full(scale) ? 100 : 30;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> spectrum(0.2, 3.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int f = 0; f < functions; ++f) {
    const int n = 2 + f % 4;
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix B(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = normal(rng);
    Eigen::HouseholderQR<Matrix> qr(B);
    const Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
    Vector values(n);
    for (int i = 0; i < n; ++i) values(i) = spectrum(rng);
    const Matrix A = reassemble(Q, values);
    const Vector y = uniform_in_ball(n, 1.0, rng);
    const double ell = values.minCoeff();
    const double G = 2.0 * values.maxCoeff();
    const double rate = ell / (G * G);
    auto h = [&](const Vector& x) { return std::exp(-rate * 0.5 * (x - y).dot(A * (x - y))); };
    for (int s = 0; s < segments; ++s) {
      const Vector a = uniform_in_ball(n, 1.0, rng);
      const Vector b = uniform_in_ball(n, 1.0, rng);
      worst = std::min(worst, h(0.5 * (a + b)) - 0.5 * (h(a) + h(b)));
    }
  }
  CriterionResult r;
  r.passed = worst >= -1e-10;
  r.detail = "min midpoint gap " + fmt(worst) + " (need >= -1e-10)";
  return r;
}

struct CriterionSpec {
  const char* name;
  CriterionResult (*run)(AcceptanceScale);
  double time_limit;  // seconds, at full scale; 0 for none
};

const CriterionSpec kCriteria[kCriterionCount] = {
    {"meta-expert bound", meta_bound, 60.0},
    {"discounted RLS equivalence", rls_equivalence, 0.0},
    {"contraction inequalities", contraction, 0.0},
    {"static regret growth", regret_growth, 120.0},
    {"tracking", tracking, 0.0},
    {"geometry oracles", geometry, 0.0},
    {"adaptive PCA", adaptive_pca, 300.0},
    {"clipped constraints", clipped_toy, 0.0},
    {"strongly convex improvement", doubly_stochastic, 0.0},
    {"economic dispatch", dispatch, 120.0},
    {"strong convexity implies exp-concavity", exp_concavity, 0.0},
};

}  // namespace

CriterionResult run_criterion(int id, AcceptanceScale scale) {
  require(id >= 1 && id <= kCriterionCount, "criterion id out of range");
  const CriterionSpec& spec = kCriteria[id - 1];
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = spec.run(scale);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = spec.name;
  r.seconds = seconds_since(start);
  if (spec.time_limit > 0.0 && r.seconds >= spec.time_limit) {
    r.passed = false;
    r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(spec.time_limit) + " s";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(AcceptanceScale scale,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, scale));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " [" + r.name + "]: " + (r.passed ? "PASS" : "FAIL") + " (" +
         r.detail + "; " + fmt(r.seconds) + " s)";
}

}  // namespace oco
