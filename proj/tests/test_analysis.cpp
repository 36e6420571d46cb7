#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "expsamp/analysis.hpp"
#include "expsamp/golden.hpp"

using namespace expsamp;

namespace {

const expsamp::signal& F() {
  static const expsamp::signal f = fejer_signal(pi);
  return f;
}

std::vector<double> doubling(double from, int count) {
  std::vector<double> w;
  for (int i = 0; i < count; ++i) w.push_back(from * std::pow(2.0, i));
  return w;
}

}  // namespace

TEST(FitOrder, SyntheticPowerLaw) {
  error_series s;
  for (double N : {10.0, 20.0, 40.0, 80.0, 160.0}) s.add(N, 3.0 * std::pow(N, -2.0), 0.0);
  const auto fit = fit_order(s);
  EXPECT_NEAR(fit.slope, -2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.rows_used, 5);
}

TEST(FitOrder, SkipsZeroRowsAndNeedsThree) {
  error_series s;
  s.add(1.0, 1.0, 1.0);
  s.add(2.0, 0.25, 0.0);
  s.add(4.0, 0.0625, 0.0);
  EXPECT_THROW(fit_order(s), insufficient_data_error);
  s.add(8.0, 1.0 / 64.0, 0.0);
  EXPECT_EQ(fit_order(s).rows_used, 3);
  error_series same;
  for (int i = 0; i < 3; ++i) same.add(5.0, 1.0, 0.5);
  EXPECT_THROW(fit_order(same), insufficient_data_error);
}

TEST(FitOrder, PrintedClassicalRowsAreThirdOrder) {
  error_series s;
  for (const auto& r : golden::find("1a").rows) s.add(static_cast<double>(r.param), std::stod(r.value), 0.02206807697284);
  EXPECT_NEAR(fit_order(s).slope, -3.0, 0.3);
}

TEST(FitOrder, JacksonRowsAreSecondOrder) {
  const auto& t = golden::find("3b");
  const double limit = jackson_sample(F(), static_cast<double>(t.rows.back().param), std::exp(t.log_x));
  error_series s;
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    const double w = static_cast<double>(t.rows[i].param);
    s.add(w, jackson_sample(F(), w, std::exp(t.log_x)), limit);
  }
  EXPECT_NEAR(fit_order(s).slope, -2.0, 0.3);
}

TEST(QuantitativeBound, BSplineAndJacksonHold) {
  const auto grid = log_grid::uniform(-5.0, 5.0, 41);
  for (const auto& k : {bspline_kernel(2), jackson_kernel(1.0, 2)}) {
    const auto rep = check_quantitative_bound(k, F(), {4.0, 16.0, 64.0}, grid);
    EXPECT_TRUE(rep.violations.empty()) << k.name();
    EXPECT_EQ(rep.checks, 3 * 41);
    EXPECT_GE(rep.M0, 1.0);
    EXPECT_GT(rep.M1, 0.0);
  }
}

TEST(QuantitativeBound, ConstantSignalBothSidesVanish) {
  const auto rep = check_quantitative_bound(bspline_kernel(2), constant_signal(1.0), {3.0, 17.0},
                                            log_grid::uniform(-2.0, 2.0, 21));
  EXPECT_LE(std::abs(rep.min_margin), 1e-15);
  for (const auto& v : rep.violations) {
    EXPECT_EQ(v.rhs, 0.0);
    EXPECT_LE(v.lhs, 1e-15);
  }
}

TEST(QuantitativeBound, RejectsFejer) {
  EXPECT_THROW(check_quantitative_bound(fejer_kernel(pi), F(), {4.0}, log_grid::uniform(-1.0, 1.0, 3)),
               unsupported_kernel_error);
  EXPECT_THROW(check_quantitative_bound(bspline_kernel(2), F(), {4.0}, log_grid{}), std::invalid_argument);
}

TEST(Voronovskaja, BSplineFirstOrderVanishes) {
  const auto r = voronovskaja_limit(bspline_kernel(2), F(), std::exp(0.3), 1, doubling(64.0, 5));
  ASSERT_TRUE(r.target.has_value());
  EXPECT_EQ(*r.target, 0.0);
  EXPECT_LT(std::abs(r.sequence.back()), std::abs(r.sequence.front()));
  EXPECT_LT(std::abs(r.sequence.back()), 1e-3);
  EXPECT_LT(std::abs(r.extrapolated), 1e-3);
}

TEST(Voronovskaja, ConstantSignalGivesZero) {
  for (const auto& k : {bspline_kernel(3), jackson_kernel(1.0, 2)}) {
    const auto r = voronovskaja_limit(k, constant_signal(2.0), 1.7, 2, doubling(8.0, 3));
    for (std::size_t i = 0; i < r.sequence.size(); ++i) {
      EXPECT_NEAR(r.sequence[i], 0.0, 1e-12 * r.w[i] * r.w[i]) << k.name();
    }
  }
}

TEST(Voronovskaja, JacksonMatchesSecondMomentFormula) {
  const auto k = jackson_kernel(1.0, 2);
  const auto integral = jackson_weighted_integral(1.0, 2, 2, quad_spec{1.0, 4096.0, 1, 1e-6}, true);
  const double A = k.normalization * integral.value;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lx(-2.0, 2.0);
  for (int i = 0; i < 5; ++i) {
    const double x = std::exp(lx(rng));
    const auto r = voronovskaja_limit(k, F(), x, 2, doubling(64.0, 4));
    const double target = A * mellin_derivative(F(), x, 2, 0.0) / 2.0;
    ASSERT_TRUE(r.target.has_value());
    EXPECT_NEAR(r.extrapolated, target, 0.05 * std::abs(target)) << "log x = " << std::log(x);
    EXPECT_NEAR(*r.target, target, 1e-5 * std::abs(target));
  }
}

TEST(Voronovskaja, Validation) {
  const auto k = bspline_kernel(2);
  EXPECT_THROW(voronovskaja_limit(k, F(), 1.0, 1, {4.0, 8.0}), std::invalid_argument);
  EXPECT_THROW(voronovskaja_limit(k, F(), 1.0, 1, {4.0, 8.0, 12.0}), std::invalid_argument);
  EXPECT_THROW(voronovskaja_limit(k, F(), 1.0, 0, doubling(4.0, 3)), std::invalid_argument);
  EXPECT_THROW(voronovskaja_limit(fejer_kernel(pi), F(), 1.0, 1, doubling(4.0, 3)), unsupported_kernel_error);
  EXPECT_THROW(voronovskaja_limit(jackson_kernel(1.0, 2), F(), 1.0, 3, doubling(4.0, 3)), unsupported_kernel_error);
}

TEST(UniformError, BSpline) {
  const auto grid = log_grid::uniform(-3.0, 3.0, 121);
  EXPECT_LE(uniform_error(bspline_kernel(2), constant_signal(1.0), 9.0, grid), 1e-15);
  EXPECT_LT(uniform_error(bspline_kernel(2), F(), 256.0, grid), uniform_error(bspline_kernel(2), F(), 16.0, grid));
}

TEST(UniformError, JacksonSecondOrderDecay) {
  const auto grid = log_grid::uniform(-3.0, 3.0, 61);
  const auto k = jackson_kernel(1.0, 2);
  double prev = uniform_error(k, F(), 32.0, grid);
  for (double w : {64.0, 128.0}) {
    const double e = uniform_error(k, F(), w, grid);
    EXPECT_NEAR(e / prev, 0.25, 0.03) << "w = " << w;
    prev = e;
  }
}

TEST(PointwiseConvergence, TenPointsEachKernel) {
  const std::vector<kernel> ks = {bspline_kernel(2), bspline_kernel(3), jackson_kernel(1.0, 2),
                                  jackson_kernel(1.0, 3)};
  for (const auto& k : ks) {
    for (int i = 0; i < 10; ++i) {
      const double t = -4.4877 + 0.97 * i;
      const double x = std::exp(t);
      const double e6 = std::abs(generalized_sample(k, F(), harness_plan(k, 64.0), x) - F()(x));
      const double e14 = std::abs(generalized_sample(k, F(), harness_plan(k, 16384.0), x) - F()(x));
      EXPECT_LT(e14, e6) << k.name() << " log x = " << t;
    }
  }
}
