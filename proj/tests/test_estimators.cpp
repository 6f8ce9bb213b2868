#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mest/error.hpp"
#include "mest/estimators.hpp"

using namespace mest;
using Catch::Approx;

namespace {

SampleSummary sample(double ybar, double xbar) { return {ybar, xbar, 10}; }

}  // namespace

TEST_CASE("ratio estimator", "[estimators]") {
  CHECK(ratio_point(sample(127, 170), 170) == 127.0);
  CHECK(ratio_point(sample(50, 80), 100) == 62.5);
  CHECK(ratio_point(sample(127, 160), 170) == Approx(134.9375).epsilon(1e-15));
  CHECK_THROWS_AS(ratio_point(sample(50, 0), 100), DomainError);
  CHECK_THROWS_AS(ratio_point(sample(50, -3), 100), DomainError);
}

TEST_CASE("exponential ratio estimator", "[estimators]") {
  CHECK(exp_ratio_point(sample(50, 100), 100) == 50.0);
  // mpmath: 50 exp(1/9)
  CHECK(exp_ratio_point(sample(50, 80), 100) == Approx(55.87595343709318243).epsilon(1e-14));
  CHECK(exp_ratio_point(sample(0, 80), 100) == 0.0);
  CHECK_THROWS_AS(exp_ratio_point(sample(50, 0), 100), DomainError);
}

TEST_CASE("regression estimator", "[estimators]") {
  CHECK(regression_point(sample(50, 100), 100, {1, 5}) == 50.0);
  CHECK(regression_point(sample(50, 80), 100, {1, 0}) == 50.0);
  CHECK(regression_point(sample(50, 80), 100, {0.9, 0.5}) == Approx(55.0).epsilon(1e-15));
  // No domain guard: the form is linear.
  CHECK(regression_point(sample(50, -20), 100, {1, 1}) == 170.0);
}

TEST_CASE("Grover-Kaur estimator", "[estimators]") {
  for (double m2 : {-3.0, 0.0, 0.25, 7.0}) {
    CHECK(grover_kaur_point(sample(50, 100), 100, {0.8, m2}) == Approx(40.0).epsilon(1e-15));
  }
  CHECK(grover_kaur_point(sample(50, 80), 100, {1, 0}) == exp_ratio_point(sample(50, 80), 100));
  // mpmath: 55 exp(1/9)
  CHECK(grover_kaur_point(sample(50, 80), 100, {0.9, 0.5}) ==
        Approx(61.46354878080250067).epsilon(1e-14));
  CHECK_THROWS_AS(grover_kaur_point(sample(50, 0), 100, {1, 0}), DomainError);
}

TEST_CASE("proposed estimator", "[estimators]") {
  for (double m12 : {-3.0, 0.0, 0.25, 7.0}) {
    CHECK(proposed_point(sample(50, 100), 100, {0.8, m12}) == Approx(40.0).epsilon(1e-15));
  }
  // mpmath, each factor to 40 digits then composed:
  // (25 [0.8 e^{-1/9} + 1.25 e^{1/9}]) e^{1/9}
  CHECK(proposed_point(sample(50, 80), 100, {1, 0}) == Approx(59.02652715630256784).epsilon(1e-14));
  CHECK(proposed_point(sample(0, 80), 100, {1, 0}) == 0.0);
  CHECK_THROWS_AS(proposed_point(sample(50, 0), 100, {1, 0}), DomainError);
}

TEST_CASE("evaluate dispatches and demands weights for weighted families", "[estimators]") {
  const SampleSummary s = sample(50, 80);
  CHECK(evaluate(EstimatorId::Mean, s, 100) == 50.0);
  CHECK(evaluate(EstimatorId::T1, s, 100) == ratio_point(s, 100));
  CHECK(evaluate(EstimatorId::T2, s, 100) == exp_ratio_point(s, 100));
  CHECK(evaluate(EstimatorId::T3, s, 100, WeightPair{0.9, 0.5}) == regression_point(s, 100, {0.9, 0.5}));
  CHECK_THROWS_AS(evaluate(EstimatorId::TP, s, 100), InvalidParameter);

  for (EstimatorId id : kAllEstimators) CHECK(parse_estimator_id(to_string(id)) == id);
  CHECK(parse_estimator_id("ybar") == EstimatorId::Mean);
  CHECK_FALSE(parse_estimator_id("t5"));
}

TEST_CASE("estimator properties over random samples", "[estimators][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.5, 500.0);
  std::uniform_real_distribution<double> real(-300.0, 300.0);
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);

  for (int trial = 0; trial < 2000; ++trial) {
    const double mu_x = pos(rng);
    const SampleSummary s{real(rng), pos(rng), 10};
    const WeightPair w{weight(rng), weight(rng)};
    const double c = scale(rng);

    // identity reduction at xbar == mu_x
    const SampleSummary at_mean{s.ybar, mu_x, 10};
    CHECK(ratio_point(at_mean, mu_x) == Approx(s.ybar).epsilon(1e-15).margin(1e-300));
    CHECK(exp_ratio_point(at_mean, mu_x) == s.ybar);
    CHECK(regression_point(at_mean, mu_x, w) == w.w1 * s.ybar);
    CHECK(grover_kaur_point(at_mean, mu_x, w) == w.w1 * s.ybar);
    CHECK(proposed_point(at_mean, mu_x, w) == Approx(w.w1 * s.ybar).epsilon(1e-15).margin(1e-300));

    // exact reduction of Grover-Kaur to the exponential ratio estimator
    CHECK(grover_kaur_point(s, mu_x, {1, 0}) == exp_ratio_point(s, mu_x));

    // scale equivariance in y (w2 scaled along)
    const SampleSummary sy{c * s.ybar, s.xbar, 10};
    const WeightPair wc{w.w1, c * w.w2};
    CHECK(ratio_point(sy, mu_x) == Approx(c * ratio_point(s, mu_x)).epsilon(1e-13).margin(1e-9));
    CHECK(exp_ratio_point(sy, mu_x) == Approx(c * exp_ratio_point(s, mu_x)).epsilon(1e-13).margin(1e-9));
    CHECK(regression_point(sy, mu_x, wc) ==
          Approx(c * regression_point(s, mu_x, w)).epsilon(1e-12).margin(1e-9));
    CHECK(grover_kaur_point(sy, mu_x, wc) ==
          Approx(c * grover_kaur_point(s, mu_x, w)).epsilon(1e-12).margin(1e-9));
    CHECK(proposed_point(sy, mu_x, wc) ==
          Approx(c * proposed_point(s, mu_x, w)).epsilon(1e-12).margin(1e-9));

    // scale invariance in x
    const SampleSummary sx{s.ybar, c * s.xbar, 10};
    CHECK(ratio_point(sx, c * mu_x) == Approx(ratio_point(s, mu_x)).epsilon(1e-13).margin(1e-12));
    CHECK(exp_ratio_point(sx, c * mu_x) == Approx(exp_ratio_point(s, mu_x)).epsilon(1e-13).margin(1e-12));

    CHECK(std::isfinite(proposed_point(s, mu_x, w)));
    CHECK(std::isfinite(grover_kaur_point(s, mu_x, w)));
  }
}
