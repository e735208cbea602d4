#include "oco/geometry.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace oco;
using oco::testing::vec;

TEST_CASE("ball projection") {
  CHECK(project_ball(vec({0.1, 0.2}), 1.0).isApprox(vec({0.1, 0.2})));
  CHECK(project_ball(vec({3, 4}), 1.0).isApprox(vec({0.6, 0.8})));
  CHECK(project_ball(vec({0, 0}), 1.0).norm() == 0.0);
}

TEST_CASE("box projection") {
  const Vector lo = vec({0, 0}), hi = vec({20, 20});
  CHECK(project_box(vec({-1, 25}), lo, hi).isApprox(vec({0, 20})));
  CHECK(project_box(vec({3, 4}), lo, hi).isApprox(vec({3, 4})));
  CHECK(project_box(hi, lo, hi) == hi);
  CHECK_THROWS_AS(project_box(vec({1, 1}), vec({2, 0}), vec({1, 1})), InvalidArgument);
}

TEST_CASE("l1 ball projection is the nearest point of the l1 ball") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector y = testing::gaussian(3, rng);
    const Vector p = project_l1_ball(y, 1.0);
    CHECK(p.lpNorm<1>() <= 1.0 + 1e-12);
    for (int k = 0; k < 20; ++k) {
      Vector z = testing::gaussian(3, rng);
      z /= std::max(1.0, z.lpNorm<1>());
      CHECK((y - p).norm() <= (y - z).norm() + 1e-12);
    }
  }
  CHECK(project_l1_ball(vec({0.2, 0.3}), 1.0).isApprox(vec({0.2, 0.3})));
}

TEST_CASE("capping") {
  const Vector uniform = Vector::Constant(4, 0.25);
  CHECK(cap_probability(uniform, 2).weights.isApprox(uniform));
  CHECK(cap_probability(vec({0.6, 0.3, 0.1}), 2).weights.isApprox(vec({0.5, 0.375, 0.125}), 1e-12));
  CHECK(cap_probability(vec({0.7, 0.2, 0.1}), 2).weights.isApprox(vec({0.5, 1.0 / 3, 1.0 / 6}), 1e-12));
  CHECK_THROWS_AS(cap_probability(uniform, 4), InvalidArgument);
  CHECK_THROWS_AS(cap_probability(vec({0.5, 0.6}), 1), InvalidArgument);
}

TEST_CASE("capping keeps the invariants on random inputs") {
  std::mt19937_64 rng(21);
  std::exponential_distribution<double> E(1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 9;
    const int d = 1 + trial % (n - 1);
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = std::pow(E(rng), 4.0);
    w /= w.sum();
    const CappedSimplexVector c = cap_probability(w, d);
    CHECK(std::abs(c.weights.sum() - 1.0) <= 1e-12);
    CHECK(c.weights.maxCoeff() <= 1.0 / d + 1e-12);
    CHECK(c.weights.minCoeff() >= 0.0);
  }
}

TEST_CASE("mixture decomposition") {
  const MixtureDecomposition corner = mixture_decompose({vec({0.5, 0.5, 0.0}), 2});
  REQUIRE(corner.size() == 1);
  CHECK(corner[0].probability == doctest::Approx(1.0));
  CHECK(corner[0].corner.support == std::vector<int>{0, 1});

  const MixtureDecomposition unit = mixture_decompose({vec({1.0, 0.0}), 1});
  REQUIRE(unit.size() == 1);
  CHECK(unit[0].corner.support == std::vector<int>{0});

  const MixtureDecomposition two = mixture_decompose({vec({0.6, 0.4}), 1});
  REQUIRE(two.size() == 2);
  CHECK(two[0].probability == doctest::Approx(0.6));
  CHECK(two[0].corner.support == std::vector<int>{0});
  CHECK(two[1].probability == doctest::Approx(0.4));
  CHECK(two[1].corner.support == std::vector<int>{1});

  CHECK_THROWS_AS(mixture_decompose({vec({0.8, 0.2}), 2}), InvalidArgument);
}

TEST_CASE("mixture decomposition reconstructs random capped vectors") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 8;
    const int d = 1 + trial % (n - 1);
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = U(rng);
    w /= w.sum();
    const CappedSimplexVector c = cap_probability(w, d);
    const MixtureDecomposition mix = mixture_decompose(c);
    CHECK(static_cast<int>(mix.size()) <= n);
    Vector sum = Vector::Zero(n);
    double total = 0.0;
    for (const auto& wc : mix) {
      CHECK(wc.corner.cap_denominator() == d);
      sum += wc.probability * wc.corner.dense();
      total += wc.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((sum - c.weights).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("corner sampling") {
  const MixtureDecomposition single = mixture_decompose({vec({0.5, 0.5, 0.0}), 2});
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(sample_corner(single, s) == single[0].corner);

  const MixtureDecomposition two = mixture_decompose({vec({0.6, 0.4}), 1});
  CHECK(sample_corner(two, 77) == sample_corner(two, 77));
  std::mt19937_64 rng(1);
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) first += sample_corner(two, rng).support[0] == 0 ? 1 : 0;
  CHECK(std::abs(first / static_cast<double>(draws) - 0.6) < 0.01);

  CHECK_THROWS_AS(sample_corner(MixtureDecomposition{}, 1), InvalidArgument);
}

TEST_CASE("p-norm projection onto a ball") {
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(project_pnorm_ball(I, vec({0.1, 0.1}), 1.0).point.isApprox(vec({0.1, 0.1})));
  CHECK(project_pnorm_ball(I, vec({3, 4}), 1.0).point.isApprox(vec({0.6, 0.8}), 1e-8));

  Matrix P = Matrix::Zero(2, 2);
  P(0, 0) = 4.0;
  P(1, 1) = 1.0;
  const PnormProjection hand = project_pnorm_ball(P, vec({2, 0}), 1.0);
  CHECK((hand.point - vec({1, 0})).norm() <= 1e-8);
  CHECK(hand.multiplier == doctest::Approx(4.0).epsilon(1e-6));

  Matrix bad = -I;
  CHECK_THROWS(project_pnorm_ball(bad, vec({3, 4}), 1.0));
}

TEST_CASE("p-norm projection beats random feasible points") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix P = testing::random_pd(3, rng);
    const Vector y = 3.0 * testing::gaussian(3, rng);
    const Vector z = project_pnorm_ball(P, y, 1.0).point;
    const Vector lo = Vector::Constant(3, -0.5), hi = Vector::Constant(3, 0.5);
    const Vector b = project_pnorm_box(P, y, lo, hi);
    auto cost = [&](const Vector& x) { return (x - y).dot(P * (x - y)); };
    CHECK(z.norm() <= 1.0 + 1e-9);
    for (int k = 0; k < 20; ++k) {
      const Vector c = project_ball(testing::gaussian(3, rng), 1.0);
      CHECK(cost(z) <= cost(c) + 1e-9);
      CHECK(cost(b) <= cost(project_box(c, lo, hi)) + 1e-9);
    }
  }
}

TEST_CASE("density capping") {
  const Matrix uniform = Matrix::Identity(4, 4) / 4.0;
  CHECK(cap_density(uniform, 2).matrix.isApprox(uniform));

  Matrix D = Matrix::Zero(3, 3);
  D.diagonal() = vec({0.6, 0.3, 0.1});
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() = vec({0.5, 0.375, 0.125});
  CHECK((cap_density(D, 2).matrix - expected).cwiseAbs().maxCoeff() <= 1e-12);

  std::mt19937_64 rng(12);
  const Matrix Q = testing::random_orthogonal(3, rng);
  const Matrix rotated = cap_density(Q * D * Q.transpose(), 2).matrix;
  CHECK((rotated - Q * expected * Q.transpose()).cwiseAbs().maxCoeff() <= 1e-10);

  Matrix skew = uniform;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(cap_density(skew, 2), InvalidArgument);
}

TEST_CASE("set membership and generic projection") {
  const FeasibleSet box = Box{vec({0, 0}), vec({1, 1})};
  CHECK(contains(box, vec({0.5, 1.0})));
  CHECK_FALSE(contains(box, vec({1.5, 0.0})));
  CHECK(project(box, vec({2, -1})).isApprox(vec({1, 0})));
  CHECK(center_of(box, 2).isApprox(vec({0.5, 0.5})));
  CHECK(contains(L1Ball{1.0}, vec({0.5, 0.5})));
  CHECK_FALSE(contains(L1Ball{1.0}, vec({0.6, 0.5})));
  CHECK(project(Unbounded{}, vec({7, 8})) == vec({7, 8}));
}
