#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "aimh/core/error.hpp"
#include "aimh/targets/example1.hpp"
#include "aimh/targets/example4.hpp"
#include "aimh/targets/quadrature.hpp"
#include "aimh/targets/standard.hpp"
#include "support/stats.hpp"

using namespace aimh;
using aimh::testing::histogram;
using aimh::testing::kGofLevel;

TEST(Quadrature, PolynomialAndBreaks) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0), 9.0, 1e-12);
  const double breaks[] = {0.5};
  EXPECT_NEAR(integrate([](double x) { return x < 0.5 ? 1.0 : 3.0; }, 0.0, 1.0, breaks), 2.0, 1e-12);
  double err = -1.0;
  integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, {}, 1e-12, &err);
  EXPECT_GE(err, 0.0);
  EXPECT_LT(err, 1e-10);
}

// --- example 1 -------------------------------------------------------------

TEST(Example1, LogDensityOutsideIsMinusInfinity) {
  EXPECT_EQ(ex1_log_density(0.0, 2000.0), kNegInf);
  EXPECT_EQ(ex1_log_density(1.0, 2000.0), kNegInf);
  EXPECT_EQ(ex1_log_density(-0.2, 2000.0), kNegInf);
  const Example1Target t;
  EXPECT_EQ(t.log_f(State{1.2}), kNegInf);
}

TEST(Example1, LogDensityMatchesLinearFormula) {
  const double a = 30.0;
  for (double x : {0.05, 0.2, 1.0 / 3.0, 0.5, 0.7, 0.95}) {
    const double f = 4.0 * std::min(std::pow(x + 2.0 / 3.0, a), std::pow(4.0 / 3.0 - x, a)) +
                     std::min(std::pow(x + 1.0 / 3.0, a), std::pow(5.0 / 3.0 - x, a));
    EXPECT_NEAR(ex1_log_density(x, a), std::log(f), 1e-12);
  }
}

TEST(Example1, GridArgmaxAndPeakRatio) {
  const std::size_t n = 1000000;
  double best_lo = 0.0, best_hi = 0.0, f_lo = kNegInf, f_hi = kNegInf;
  for (std::size_t i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const double lf = ex1_log_density(x, 2000.0);
    if (x < 0.5 && lf > f_lo) f_lo = lf, best_lo = x;
    if (x > 0.5 && lf > f_hi) f_hi = lf, best_hi = x;
  }
  EXPECT_NEAR(best_lo, 1.0 / 3.0, 1.0 / n);
  EXPECT_NEAR(best_hi, 2.0 / 3.0, 1.0 / n);
  const double ratio = std::exp(ex1_log_density(1.0 / 3.0, 2000.0) - ex1_log_density(2.0 / 3.0, 2000.0));
  EXPECT_NEAR(ratio, 4.0, 1e-9);
}

TEST(Example1, MassNearTheModes) {
  const Example1Target t(2000.0);
  const double h = 0.0025;
  const double mass = t.cdf(1.0 / 3.0 + h) - t.cdf(1.0 / 3.0 - h) + t.cdf(2.0 / 3.0 + h) - t.cdf(2.0 / 3.0 - h);
  EXPECT_NEAR(mass, 0.996, 0.003);
}

TEST(Example1, NormalizerStableUnderRefinement) {
  const Example1Target t(2000.0);
  std::vector<double> breaks;
  for (double m : {1.0 / 3.0, 2.0 / 3.0})
    for (double k : {-128.0, -32.0, -8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0, 32.0, 128.0}) breaks.push_back(m + k / 2000.0);
  std::sort(breaks.begin(), breaks.end());
  const double z = integrate([](double x) { return std::exp(ex1_log_density(x, 2000.0)); }, 0.0, 1.0, breaks, 1e-13);
  ASSERT_TRUE(t.log_norm_const().has_value());
  EXPECT_LT(std::abs(std::log(z) - *t.log_norm_const()), 1e-8);
  EXPECT_NEAR(t.c() * z, 1.0, 1e-8);
}

TEST(Example1, CdfAndQuantileInvert) {
  const Example1Target t;
  EXPECT_NEAR(t.cdf(0.0), 0.0, 1e-15);
  EXPECT_NEAR(t.cdf(1.0), 1.0, 1e-10);
  for (double p : {0.01, 0.2, 0.5, 0.79, 0.81, 0.99}) EXPECT_NEAR(t.cdf(t.quantile(p)), p, 1e-10);
  // Mode masses: 4/5 near 1/3, 1/5 near 2/3, up to the background.
  EXPECT_NEAR(t.cdf(0.5), 0.8, 0.01);
}

TEST(Example1, ExactSamplerPassesGof) {
  const Example1Target t;
  std::vector<double> edges{0.0};
  for (int k = 1; k < 20; ++k) edges.push_back(t.quantile(k / 20.0));
  edges.push_back(1.0);
  Rng rng(1);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = t.sample_exact(rng)[0];
  EXPECT_GT(chi_square_gof(histogram(xs, edges), std::vector<double>(20, 0.05)).p_value, kGofLevel);
}

// --- mixtures, Cauchy, boxes -----------------------------------------------

TEST(Gauss13, LayoutGeometry) {
  const auto m = gauss13_layout();
  ASSERT_EQ(m.size(), 13u);
  std::set<std::pair<double, double>> distinct;
  for (const auto& p : m) distinct.insert({p[0], p[1]});
  EXPECT_EQ(distinct.size(), 13u);
  const double sigma = 0.01;
  // Inner neighbours 5 sigma from the centre, outer modes far apart.
  EXPECT_NEAR(std::sqrt(squared_distance(m[0], m[1])) / sigma, 5.0, 1e-12);
  double outer_min = kPosInf;
  for (std::size_t i = 5; i < 13; ++i)
    for (std::size_t j = i + 1; j < 13; ++j) outer_min = std::min(outer_min, std::sqrt(squared_distance(m[i], m[j])));
  EXPECT_GT(outer_min / sigma, 100.0);
  const auto t = GaussMixtureTarget::isotropic(m, sigma);
  double w = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) w += t.weight(j);
  EXPECT_NEAR(w, 1.0, 1e-15);
}

TEST(GaussMixture, LogDensityMatchesLinearScale) {
  std::vector<Eigen::MatrixXd> covs{Eigen::MatrixXd::Identity(2, 2) * 0.5, Eigen::Matrix2d{{1.0, 0.3}, {0.3, 0.4}}};
  const GaussMixtureTarget t({{0.0, 0.0}, {1.0, -1.0}}, {0.3, 0.7}, covs);
  ASSERT_TRUE(t.log_norm_const().has_value());
  EXPECT_EQ(*t.log_norm_const(), 0.0);
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const State x{2.0 * standard_normal(rng), 2.0 * standard_normal(rng)};
    double f = 0.0;
    for (int j = 0; j < 2; ++j) {
      const Eigen::MatrixXd& s = covs[static_cast<std::size_t>(j)];
      const Eigen::Vector2d d(x[0] - (j ? 1.0 : 0.0), x[1] - (j ? -1.0 : 0.0));
      const double q = d.dot(s.inverse() * d);
      f += (j ? 0.7 : 0.3) * std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(s.determinant()));
    }
    if (f < 1e-300) continue;
    EXPECT_NEAR(t.log_f(x), std::log(f), 1e-10 * std::abs(std::log(f)) + 1e-12);
  }
}

TEST(GaussMixture, FarFromEveryModeStaysFinite) {
  const auto t = GaussMixtureTarget::isotropic(gauss13_layout(), 0.01);
  const double lf = t.log_f(State{0.75, 0.75});
  EXPECT_TRUE(std::isfinite(lf));
  EXPECT_LT(lf, -500.0);
}

TEST(Cauchy, QuantileBins) {
  EXPECT_NEAR(cauchy_quantile_bins(2)[1], 1.0, 1e-15);
  const auto e = cauchy_quantile_bins(20);
  ASSERT_EQ(e.size(), 21u);
  EXPECT_EQ(e[0], 0.0);
  EXPECT_TRUE(std::isinf(e[20]));
  // Numeric inversion of (2/pi) atan(t) = 1/20 by bisection.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (2.0 / std::numbers::pi * std::atan(mid) < 0.05 ? lo : hi) = mid;
  }
  EXPECT_NEAR(e[1], lo, 1e-14);
  EXPECT_NEAR(e[1], 0.0787, 5e-5);
}

TEST(Cauchy, DirectDrawsFillBinsEvenly) {
  const CauchyTarget t;
  const auto edges = cauchy_quantile_bins(20);
  Rng rng(3);
  std::vector<double> xs(1000000);
  for (auto& x : xs) x = std::abs(t.sample_exact(rng)[0]);
  std::vector<double> finite_edges = edges;
  finite_edges.back() = std::numeric_limits<double>::max();
  EXPECT_GT(chi_square_gof(histogram(xs, finite_edges), std::vector<double>(20, 0.05)).p_value, kGofLevel);
}

TEST(Cauchy, NormalProposalRatioVanishesInTheTails) {
  const CauchyTarget t;
  double prev = kPosInf;
  for (double x : {2.0, 5.0, 10.0, 20.0, 40.0}) {
    const double log_ratio = (-0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi)) - t.log_pi(State{x});
    EXPECT_LT(log_ratio, prev);
    prev = log_ratio;
  }
  EXPECT_LT(prev, std::log(1e-300));
}

TEST(UniformBox, DensityAndSampler) {
  const UniformBoxTarget t({0.0, -1.0}, {2.0, 1.0});
  EXPECT_NEAR(t.log_pi(State{1.0, 0.0}), -std::log(4.0), 1e-15);
  EXPECT_EQ(t.log_f(State{3.0, 0.0}), kNegInf);
  Rng rng(4);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(t.support().contains(t.sample_exact(rng)));
}

TEST(Finite, ProbabilitiesNormalize) {
  const FiniteTarget t({{0.0}, {1.0}, {2.0}}, {1.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(t.probability(1), 0.5);
  EXPECT_NEAR(t.log_pi(State{2.0}), std::log(0.25), 1e-15);
  EXPECT_EQ(t.log_f(State{0.5}), kNegInf);
}

// --- example 4 -------------------------------------------------------------

TEST(Example4, ResponseValues) {
  const double below_one = std::nextafter(1.0, 0.0);
  EXPECT_NEAR(ex4_f(State{0.5, below_one, below_one, below_one, below_one}), 6.75, 1e-12);
  const double tiny = 1e-300;
  EXPECT_NEAR(ex4_f(State{tiny, tiny, tiny, tiny, tiny}), 0.0, 1e-15);
  EXPECT_EQ(ex4_log_likelihood(2.5, 2.5, 0.005), 0.0);
  EXPECT_NEAR(ex4_log_likelihood(2.6, 2.5, 0.005), -2.0, 1e-12);
  EXPECT_THROW(ex4_f(State{0.5, 0.5}), Error);
}

TEST(Example4, TargetCarriesResponse) {
  const Example4Target t(std::make_shared<BuiltinEx4Evaluator>());
  const State x{0.2, 0.3, 0.4, 0.5, 0.6};
  const Evaluation e = t.evaluate(x);
  EXPECT_EQ(e.response, ex4_f(x));
  EXPECT_EQ(e.log_f, ex4_log_likelihood(ex4_f(x), 2.5, 0.005));
  EXPECT_EQ(t.evaluate(State{0.2, 0.3, 0.4, 0.5, 1.6}).log_f, kNegInf);
  EXPECT_FALSE(t.log_norm_const().has_value());
}
