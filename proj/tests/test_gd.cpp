#include "oco/gd.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace oco;
using oco::testing::vec;

namespace {

CurvatureProfile sc(double ell, std::optional<double> u = std::nullopt) {
  CurvatureProfile p;
  p.strong_convexity = ell;
  p.smoothness = u;
  return p;
}

GdState at_round(GdState s, long t) {
  s.round = t;
  return s;
}

}  // namespace

TEST_CASE("step sizes") {
  const CurvatureProfile p = sc(2.0, 4.0);
  for (double g : {0.1, 0.5, 0.99})
    CHECK(step_size(GdState::start(vec({0}), g, StepRule::DiscountedRls), p) == doctest::Approx(1.0));
  CHECK(step_size(at_round(GdState::start(vec({0}), 0.5, StepRule::DiscountedRls), 2), p) ==
        doctest::Approx(2.0 / 3.0));
  CHECK(step_size(at_round(GdState::start(vec({0}), 0.5, StepRule::StronglyConvex), 2), p) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(step_size(at_round(GdState::start(vec({0}), 0.5, StepRule::Classic), 4), p) == doctest::Approx(0.125));
  // (1-g)/(ell (g - g^t) + u (1-g)) at t = 1 is 1/u.
  CHECK(step_size(GdState::start(vec({0}), 0.7, StepRule::SmoothStronglyConvex), p) == doctest::Approx(0.25));
}

TEST_CASE("step sizes need their curvature constants") {
  const CurvatureProfile none;
  CHECK_THROWS_AS(step_size(GdState::start(vec({0}), 0.5, StepRule::StronglyConvex), none), InvalidArgument);
  CHECK_THROWS_AS(step_size(GdState::start(vec({0}), 0.5, StepRule::SmoothStronglyConvex), sc(1.0)),
                  InvalidArgument);
  CHECK_THROWS_AS(GdState::start(vec({0}), 1.0, StepRule::DiscountedRls), InvalidArgument);
}

TEST_CASE("gd round basics") {
  const CurvatureProfile p = sc(1.0);
  const GdState s = GdState::start(vec({0.3, -0.2}), 0.9, StepRule::StronglyConvex);
  const GdState fixed = gd_round(s, Vector::Zero(2), Unbounded{}, p);
  CHECK(fixed.iterate == s.iterate);
  CHECK(fixed.round == 2);

  const GdState out = gd_round(s, vec({-30.0, -40.0}), Ball{1.0}, p);
  CHECK(std::abs(out.iterate.norm() - 1.0) <= 1e-10);

  const Vector bad = vec({std::numeric_limits<double>::quiet_NaN(), 0.0});
  CHECK_THROWS_AS(gd_round(s, bad, Unbounded{}, p), NumericalError);
}

TEST_CASE("discounted-RLS steps compute the discounted running mean") {
  std::mt19937_64 rng(17);
  const double gamma = 0.8;
  const CurvatureProfile p = sc(1.0);
  GdState s = GdState::start(vec({0.0, 0.0, 0.0}), gamma, StepRule::DiscountedRls);
  std::vector<Vector> ys;
  for (int t = 1; t <= 50; ++t) {
    ys.push_back(testing::gaussian(3, rng));
    s = gd_round(s, s.iterate - ys.back(), Unbounded{}, p);
    // argmin of sum_i gamma^{t-i} 1/2 |x - y_i|^2
    Vector num = Vector::Zero(3);
    double den = 0.0;
    for (int i = 1; i <= t; ++i) {
      const double w = std::pow(gamma, t - i);
      num += w * ys[static_cast<std::size_t>(i - 1)];
      den += w;
    }
    CHECK((s.iterate - num / den).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("gamma for beta") {
  CHECK(gamma_for_beta(100, 0.5) == doctest::Approx(0.9));
  CHECK(gamma_for_beta(16, 0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(gamma_for_beta(10000, 1.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_for_beta(10000, 0.0), InvalidArgument);
}

TEST_CASE("gamma for path length") {
  const double T = 100.0, D = 1.0;
  const double floor = std::log(T) * std::log(T) / T;
  CHECK(gamma_for_path(100, D, 0.0) == doctest::Approx(1.0 - 0.5 * std::sqrt(floor / (2.0 * D * T))));
  CHECK(gamma_for_path(100, D, 2.0 * D * T) == doctest::Approx(0.5));
  for (long t : {2L, 10L, 1000L, 100000L})
    for (double d : {0.5, 1.0, 7.0})
      for (double frac : {0.0, 0.01, 0.3, 1.0}) {
        const double g = gamma_for_path(t, d, frac * 2.0 * d * static_cast<double>(t));
        CHECK(g >= 0.5 - 1e-12);
        CHECK(g < 1.0);
      }
}

TEST_CASE("gd learner") {
  GdLearner learner(GdState::start(vec({1.0}), 0.5, StepRule::Classic), Unbounded{}, sc(1.0));
  learner.update(vec({1.0}));
  CHECK(learner.iterate()(0) == doctest::Approx(0.0));
  CHECK(learner.current_step() == doctest::Approx(0.5));
}
