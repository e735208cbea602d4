#include "oco/core.hpp"
#include "oco/geometry.hpp"
#include "oco/oracle.hpp"
#include "oco/streams.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace oco;
using oco::testing::vec;

namespace {

RoundTrace record(std::int64_t t, const Vector& x, const LossRound& f, Vector g = Vector()) {
  return RoundTrace{t, x, f.value(x), std::move(g), 0.0};
}

}  // namespace

TEST_CASE("static regret: zero iterates against the zero comparator") {
  const LossRound f = testing::squared_norm(1);
  std::vector<LossRound> losses(3, f);
  std::vector<RoundTrace> trace;
  for (int t = 0; t < 3; ++t) trace.push_back(record(t + 1, Vector::Zero(1), f));
  CHECK(static_regret(trace, Vector::Zero(1), losses).regret == 0.0);
}

TEST_CASE("static regret: two rounds at 1 against 0") {
  const LossRound f = testing::squared_norm(1);
  std::vector<LossRound> losses(2, f);
  std::vector<RoundTrace> trace{record(1, vec({1.0}), f), record(2, vec({1.0}), f)};
  const RegretReport r = static_regret(trace, Vector::Zero(1), losses);
  CHECK(r.regret == doctest::Approx(2.0));
  CHECK(r.cumulative_loss == doctest::Approx(2.0));
}

TEST_CASE("static regret rejects mismatched lengths") {
  const LossRound f = testing::squared_norm(1);
  std::vector<LossRound> losses(2, f);
  std::vector<RoundTrace> trace{record(1, vec({1.0}), f)};
  CHECK_THROWS_AS(static_regret(trace, Vector::Zero(1), losses), InvalidArgument);
}

TEST_CASE("static regret against the offline minimizer is non-negative") {
  std::mt19937_64 rng(3);
  QuadraticStreamOptions opt;
  opt.dim = 3;
  opt.segments = 4;
  opt.noise = 0.2;
  opt.u = 3.0;
  const QuadraticStream s = gen_quadratic_stream(200, opt, 11);
  std::vector<RoundTrace> trace;
  for (std::size_t t = 0; t < s.rounds.size(); ++t)
    trace.push_back(record(static_cast<long>(t) + 1, testing::gaussian(3, rng) * 0.3, s.rounds[t]));
  const OracleResult best = offline_oracle(s.rounds, Ball{1.0}, 3);
  CHECK(best.converged);
  CHECK(static_regret(trace, best.point, s.rounds).regret >= 0.0);
}

TEST_CASE("dynamic regret: identity comparators and reductions") {
  std::mt19937_64 rng(5);
  std::vector<LossRound> losses;
  std::vector<RoundTrace> trace;
  std::vector<Vector> points;
  for (int t = 0; t < 20; ++t) {
    losses.push_back(testing::quadratic(testing::gaussian(2, rng)));
    points.push_back(testing::gaussian(2, rng));
    trace.push_back(record(t + 1, points.back(), losses.back()));
  }
  const RegretReport self = dynamic_regret(trace, points, losses);
  CHECK(self.regret == doctest::Approx(0.0));
  CHECK(*self.path_length == doctest::Approx(path_length(points)));

  const Vector z = vec({0.1, -0.2});
  std::vector<Vector> constant(20, z);
  const RegretReport dyn = dynamic_regret(trace, constant, losses);
  CHECK(dyn.regret == doctest::Approx(static_regret(trace, z, losses).regret));
  CHECK(*dyn.path_length == 0.0);
}

TEST_CASE("dynamic regret against per-round minimizers is non-negative") {
  QuadraticStreamOptions opt;
  opt.segments = 3;
  opt.noise = 0.1;
  const QuadraticStream s = gen_quadratic_stream(150, opt, 2);
  std::vector<RoundTrace> trace;
  for (std::size_t t = 0; t < s.rounds.size(); ++t)
    trace.push_back(record(static_cast<long>(t) + 1, Vector::Zero(opt.dim), s.rounds[t]));
  CHECK(dynamic_regret(trace, s.targets, s.rounds).regret >= 0.0);
}

TEST_CASE("path length") {
  std::vector<Vector> still{vec({0, 0}), vec({0, 0})};
  std::vector<Vector> triangle{vec({0, 0}), vec({3, 4})};
  std::vector<Vector> zigzag{vec({0}), vec({1}), vec({0}), vec({1})};
  CHECK(path_length(still) == 0.0);
  CHECK(path_length(triangle) == doctest::Approx(5.0));
  CHECK(path_length(zigzag) == doctest::Approx(3.0));
  CHECK_THROWS_AS(path_length(std::vector<Vector>{}), InvalidArgument);
}

TEST_CASE("violation metrics") {
  auto run = [](std::vector<double> gs) {
    std::vector<RoundTrace> trace;
    for (std::size_t t = 0; t < gs.size(); ++t)
      trace.push_back(RoundTrace{static_cast<long>(t) + 1, Vector::Zero(1), 0.0, vec({gs[t]}), 0.0});
    return violation_metrics(trace);
  };
  ViolationMetrics feasible = run({-1, -1});
  CHECK(feasible.clipped_sum(0) == 0.0);
  CHECK(feasible.signed_sum(0) == -2.0);

  ViolationMetrics cancel = run({1, -1});
  CHECK(cancel.clipped_sum(0) == 1.0);
  CHECK(cancel.clipped_square_sum(0) == 1.0);
  CHECK(cancel.signed_sum(0) == 0.0);

  ViolationMetrics small = run({0.3, 0.4});
  CHECK(small.clipped_square_sum(0) == doctest::Approx(0.25));
  CHECK(small.max_single_step(0) == doctest::Approx(0.4));

  std::vector<RoundTrace> ragged{RoundTrace{1, Vector::Zero(1), 0.0, vec({1.0}), 0.0},
                                 RoundTrace{2, Vector::Zero(1), 0.0, vec({1.0, 2.0}), 0.0}};
  CHECK_THROWS_AS(violation_metrics(ragged), InvalidArgument);
}

TEST_CASE("trace requires consecutive rounds") {
  Trace trace;
  trace.append(RoundTrace{1, Vector::Zero(1), 0.0, Vector(), 0.0});
  trace.append(RoundTrace{2, Vector::Zero(1), 0.0, Vector(), 0.0});
  CHECK(trace.size() == 2);
  CHECK_THROWS_AS(trace.append(RoundTrace{4, Vector::Zero(1), 0.0, Vector(), 0.0}), InvalidArgument);
}

TEST_CASE("curvature profile validation") {
  CurvatureProfile p;
  CHECK_NOTHROW(p.validate());
  p.diameter = 0.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.diameter = 1.0;
  p.strong_convexity = 2.0;
  p.smoothness = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  CurvatureProfile q;
  CHECK_THROWS_AS(q.ell(), InvalidArgument);
}
