#include "oco/config.hpp"
#include "oco/experiments.hpp"
#include "oco/gd.hpp"
#include "oco/oracle.hpp"
#include "oco/streams.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace oco;
using oco::testing::vec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("oco_tests_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("named sub-streams are independent and reproducible") {
  CHECK(substream_seed(1, "a") == substream_seed(1, "a"));
  CHECK(substream_seed(1, "a") != substream_seed(1, "b"));
  CHECK(substream_seed(1, "a") != substream_seed(2, "a"));
}

TEST_CASE("toy stream") {
  const auto rounds = gen_toy_stream(500, 3);
  REQUIRE(rounds.size() == 500);
  for (const auto& r : rounds) CHECK(r.gradient(Vector::Zero(2)).norm() == doctest::Approx(1.0));
  CHECK(rounds[0].constraints[0].value(vec({0.5, 0.5})) == doctest::Approx(0.0));
  CHECK(rounds[0].constraints[0].value(vec({0.0, 0.0})) == doctest::Approx(-1.0));
}

TEST_CASE("subspace stream") {
  const auto xs = gen_subspace_stream(600, 20, 2, 3, 5);
  REQUIRE(xs.size() == 600);
  for (const auto& x : xs) CHECK(x.norm() <= 1.0 + 1e-12);
  for (int seg = 0; seg < 3; ++seg) {
    Matrix C = Matrix::Zero(20, 20);
    for (int t = seg * 200; t < (seg + 1) * 200; ++t) C += xs[t] * xs[t].transpose();
    const Vector ev = symmetric_eigen(C).values;
    CHECK(ev(17) <= 1e-10 * ev(19));
  }
  CHECK((gen_subspace_stream(600, 20, 2, 3, 6)[0] - xs[0]).norm() > 0.0);
}

TEST_CASE("permutation stream") {
  const int dim = 4;
  const auto rounds = gen_permutation_stream(20, dim, 2);
  for (const auto& r : rounds) {
    const Vector Y = r.gradient(Vector::Zero(dim * dim)) * -1.0;
    CHECK(r.value(Y) == doctest::Approx(0.0));
    CHECK(r.value(Vector::Zero(dim * dim)) == doctest::Approx(dim / 2.0));
    CHECK(r.hessian(Y).isApprox(Matrix::Identity(dim * dim, dim * dim)));
    CHECK(r.constraints.size() == static_cast<std::size_t>(4 * dim + dim * dim));
  }
}

TEST_CASE("dispatch stream") {
  const DispatchModel m;
  const std::vector<double> demand{12.0, 30.0, 44.0};
  const auto rounds = gen_dispatch_stream(m, demand);
  for (std::size_t t = 0; t < demand.size(); ++t) {
    CHECK(rounds[t].value(Vector::Zero(3)) == doctest::Approx(m.xi * demand[t] * demand[t]));
    CHECK(rounds[t].constraints[0].value(Vector::Zero(3)) == doctest::Approx(-m.emission_cap));
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = vec({U(rng), U(rng), U(rng)});
    const Vector g = rounds[1].gradient(x);
    for (int i = 0; i < 3; ++i) {
      const double h = 1e-5;
      Vector up = x, down = x;
      up(i) += h;
      down(i) -= h;
      const double fd = (rounds[1].value(up) - rounds[1].value(down)) / (2.0 * h);
      CHECK(std::abs(fd - g(i)) <= 1e-6 * std::max(1.0, std::abs(g(i))));
    }
  }
}

TEST_CASE("demand helpers") {
  const std::vector<double> series{1.0, 2.0, 3.0};
  const auto r = rescale(series);
  CHECK(r.front() == doctest::Approx(10.0));
  CHECK(r.back() == doctest::Approx(45.0));
  const auto flat = rescale(std::vector<double>{2.0, 2.0});
  CHECK(flat[0] == doctest::Approx(27.5));

  const auto d = synthetic_demand(600, 1);
  CHECK(d.size() == 600);
  CHECK(*std::min_element(d.begin(), d.end()) >= 10.0 - 1e-12);
  CHECK(*std::max_element(d.begin(), d.end()) <= 45.0 + 1e-12);

  const fs::path dir = scratch("demand");
  fs::create_directories(dir);
  std::ofstream(dir / "ok.csv") << "t,demand\r\n1,5\r\n2,7\r\n3,6\r\n";
  const auto loaded = load_demand_csv((dir / "ok.csv").string());
  REQUIRE(loaded.size() == 3);
  CHECK(loaded[1] == doctest::Approx(45.0));
  std::ofstream(dir / "bad.csv") << "t,demand\n1,abc\n";
  CHECK_THROWS_AS(load_demand_csv((dir / "bad.csv").string()), InvalidArgument);
  CHECK_THROWS_AS(load_demand_csv((dir / "missing.csv").string()), IoError);
}

TEST_CASE("adversarial stream") {
  const double sigma = 0.5;
  const long T = 400;
  double regret = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const AdversarialStream s = gen_adversarial_stream(T, sigma, seed);
    CurvatureProfile p;
    p.strong_convexity = 2.0;
    GdState st = GdState::start(vec({0.0}), 0.5, StepRule::Classic);
    for (long t = 0; t < T; ++t) {
      const double eps = s.epsilons[static_cast<std::size_t>(t)];
      CHECK(std::abs(std::abs(eps) - 2.0 * sigma) == 0.0);
      const LossRound& f = s.rounds[static_cast<std::size_t>(t)];
      CHECK(f.value(s.comparators[static_cast<std::size_t>(t)]) == doctest::Approx(eps * eps / 4.0));
      regret += f.value(st.iterate) - f.value(s.comparators[static_cast<std::size_t>(t)]);
      st = gd_round(st, f.gradient(st.iterate), Ball{2.0 * sigma}, p);
    }
  }
  CHECK(regret / 10.0 >= 2.0 * sigma * sigma * T * 0.8);
}

TEST_CASE("quadratic stream") {
  QuadraticStreamOptions opt;
  opt.ell = 0.5;
  opt.u = 2.0;
  opt.segments = 3;
  const QuadraticStream s = gen_quadratic_stream(90, opt, 4);
  for (std::size_t t = 0; t < s.rounds.size(); ++t) {
    CHECK(s.rounds[t].value(s.targets[t]) == doctest::Approx(0.0));
    const Vector ev = symmetric_eigen(s.curvatures[t]).values;
    CHECK(ev.minCoeff() >= 0.5 - 1e-9);
    CHECK(ev.maxCoeff() <= 2.0 + 1e-9);
  }
}

TEST_CASE("offline oracle") {
  const Vector c = vec({0.3, -0.2});
  const std::vector<LossRound> inside{testing::quadratic(c)};
  const OracleResult a = offline_oracle(inside, Ball{1.0}, 2);
  CHECK(a.converged);
  CHECK((a.point - c).norm() <= 1e-6);

  const Vector far = vec({3.0, 4.0});
  const std::vector<LossRound> outside{testing::quadratic(far)};
  CHECK((offline_oracle(outside, Ball{2.0}, 2).point - vec({1.2, 1.6})).norm() <= 1e-6);

  const OracleResult capped = offline_oracle(outside, Ball{2.0}, 2, 1e-30, 1);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("offline oracle on the toy stream matches a grid search") {
  const auto rounds = gen_toy_stream(2000, 9);
  Vector mean = Vector::Zero(2);
  for (const auto& r : rounds) mean += r.gradient(Vector::Zero(2));
  mean /= static_cast<double>(rounds.size());
  const OracleResult best = offline_oracle(rounds, L1Ball{1.0}, 2);

  double grid_best = 1e300;
  const int n = 1000;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Vector x = vec({-1.0 + 2.0 * i / n, -1.0 + 2.0 * j / n});
      if (x.lpNorm<1>() <= 1.0 + 1e-12) grid_best = std::min(grid_best, mean.dot(x));
    }
  CHECK(std::abs(best.average_loss - grid_best) <= 1e-3);
}

TEST_CASE("interval regret") {
  QuadraticStreamOptions opt;
  opt.segments = 2;
  opt.noise = 0.05;
  const QuadraticStream s = gen_quadratic_stream(60, opt, 8);
  std::vector<RoundTrace> trace;
  for (std::size_t t = 0; t < s.rounds.size(); ++t) {
    const Vector x = t == 10 ? s.targets[t] : Vector::Zero(opt.dim);
    trace.push_back(RoundTrace{static_cast<long>(t) + 1, x, s.rounds[t].value(x), Vector(), 0.0});
  }
  const std::vector<Interval> whole{{1, 60}}, single{{11, 11}};
  const double r = interval_regret(trace, s.rounds, whole, Ball{1.0})[0];
  const OracleResult best = offline_oracle(s.rounds, Ball{1.0}, opt.dim);
  CHECK(r == doctest::Approx(static_regret(trace, best.point, s.rounds).regret).epsilon(1e-6));
  CHECK(std::abs(interval_regret(trace, s.rounds, single, Ball{1.0})[0]) <= 1e-6);
  const std::vector<Interval> bad{{5, 3}};
  CHECK_THROWS_AS(interval_regret(trace, s.rounds, bad, Ball{1.0}), InvalidArgument);
}

TEST_CASE("best projection loss") {
  std::vector<Vector> xs{vec({1, 0, 0}), vec({0, 0.5, 0}), vec({0, 0, 0.1})};
  CHECK(best_projection_loss(xs, 2) == doctest::Approx(0.01));
  CHECK(best_projection_loss(xs, 1) == doctest::Approx(0.26));
  const std::vector<double> losses{0.5, 0.5, 0.5};
  const std::vector<Interval> whole{{1, 3}};
  CHECK(pca_interval_regret(losses, xs, whole, 2)[0] == doctest::Approx(1.49));
}

TEST_CASE("experiment configuration") {
  for (const auto& id : experiment_ids()) {
    const ExperimentConfig c = default_config(id);
    CHECK_NOTHROW(c.validate());
    CHECK_FALSE(default_roster(id).empty());
  }
  CHECK_THROWS_AS(default_config("nope"), InvalidArgument);
  ExperimentConfig c = default_config("toy");
  c.algorithms.clear();
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = default_config("toy");
  c.beta = 1.5;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = default_config("toy");
  c.algorithms = {"strong"};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("toy experiment writes traces and a summary") {
  const fs::path dir = scratch("toy");
  ExperimentConfig c = default_config("toy");
  c.horizon = 300;
  c.seeds = {3};
  c.out_dir = dir.string();
  const ExperimentResult r = run_experiment(c);
  CHECK(r.cells.size() == 2);
  CHECK(fs::exists(dir / "toy_clipped_seed3.csv"));
  CHECK(fs::exists(dir / "toy_mahdavi_seed3.csv"));
  CHECK(fs::exists(dir / "toy_summary.csv"));
  CHECK(fs::exists(dir / "toy_timing.csv"));

  const std::string trace = slurp(dir / "toy_clipped_seed3.csv");
  CHECK(trace.rfind("t,loss,cum_loss,regret,violation_signed,violation_clipped,step_size\n", 0) == 0);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 301);
  const std::string summary = slurp(dir / "toy_summary.csv");
  CHECK(summary.rfind("algorithm,seed,horizon,cum_loss,comparator_loss,final_regret,clipped_sum,"
                      "clipped_square_sum,signed_sum,max_clip\n",
                      0) == 0);
}

TEST_CASE("experiments are deterministic across runs and thread counts") {
  for (const std::string id : {"toy", "tracking", "pca", "adversarial", "dsm", "dispatch"}) {
    ExperimentConfig c = default_config(id);
    c.horizon = id == "pca" ? 90 : 120;
    c.seeds = {1, 2};
    const fs::path a = scratch(id + "_a"), b = scratch(id + "_b");
    c.out_dir = a.string();
    run_experiment(c);
    c.out_dir = b.string();
    c.jobs = 3;
    run_experiment(c);
    for (const auto& entry : fs::directory_iterator(a)) {
      if (entry.path().filename().string().find("timing") != std::string::npos) continue;
      CHECK_MESSAGE(slurp(entry.path()) == slurp(b / entry.path().filename()), entry.path().string());
    }
  }
}

TEST_CASE("run cell metrics agree with the trace") {
  ExperimentConfig c = default_config("dispatch");
  c.horizon = 200;
  const CellResult cell = run_cell(c, "clipped", 1);
  double clipped = 0.0, cum = 0.0;
  for (const auto& row : cell.rows) {
    clipped += row.violation_clipped;
    cum += row.loss;
  }
  CHECK(clipped == doctest::Approx(cell.clipped_sum));
  CHECK(cum == doctest::Approx(cell.cumulative_loss));
  CHECK(cell.regret == doctest::Approx(cell.cumulative_loss - cell.comparator_loss));
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345678.9, 0.0})
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("config files") {
  const ConfigMap m = parse_config_text("# comment\n\nhorizon = 100\nout=runs/x\n");
  CHECK(m.at("horizon") == "100");
  CHECK(m.at("out") == "runs/x");
  CHECK_THROWS_AS(parse_config_text("horizon 100\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text("a=1\na=2\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/oco.cfg"), IoError);
}
