#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "expsamp/kernels.hpp"
#include "expsamp/mellin_ops.hpp"
#include "expsamp/quadrature.hpp"

using namespace expsamp;

namespace {

log_grid test_grid() { return log_grid::uniform(-3.0, 3.0, 97); }

}  // namespace

TEST(BSpline, HatFunctionValues) {
  const auto b2 = bspline_kernel(2);
  EXPECT_DOUBLE_EQ(b2(1.0), 1.0);
  EXPECT_EQ(b2(std::exp(1.0)), 0.0);
  EXPECT_DOUBLE_EQ(b2(std::exp(0.5)), 0.5);
  EXPECT_DOUBLE_EQ(b2.at_log(-0.25), 0.75);
}

// Oracle: B_3 and B_4 as convolutions of the hat with the box, by hand.
TEST(BSpline, HigherOrderValues) {
  const auto b3 = bspline_kernel(3);
  const auto b4 = bspline_kernel(4);
  EXPECT_NEAR(b3.at_log(0.0), 0.75, 1e-15);
  EXPECT_NEAR(b3.at_log(1.0), 0.125, 1e-15);
  EXPECT_NEAR(b3.at_log(-1.0), 0.125, 1e-15);
  EXPECT_EQ(b3.at_log(1.5), 0.0);
  EXPECT_NEAR(b4.at_log(0.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(b4.at_log(1.0), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(b4.at_log(2.0), 0.0);
}

TEST(BSpline, BoxBoundaryAndPartition) {
  const auto b1 = bspline_kernel(1);
  EXPECT_EQ(b1.at_log(0.5), 1.0);
  EXPECT_EQ(b1.at_log(-0.5), 0.0);
  for (double u : {0.5, -0.5, 0.25, 2.0}) {
    EXPECT_EQ(moment_m(b1, 0, std::exp(u)), 1.0) << "u = " << u;
  }
}

TEST(BSpline, VanishesOutsideSupport) {
  for (int n = 2; n <= 6; ++n) {
    const auto k = bspline_kernel(n);
    const double R = *k.support_log_radius;
    EXPECT_EQ(R, 0.5 * n);
    for (double t : {R, R + 0.1, -R, -R - 3.0}) EXPECT_EQ(k.at_log(t), 0.0) << "n = " << n << " t = " << t;
  }
}

TEST(BSpline, MellinTransformMatchesNumeric) {
  const auto b3 = bspline_kernel(3);
  const expsamp::signal f([&](double t) { return b3.at_log(t); }, "b3");
  for (double v : {0.0, 1.0, 3.7}) {
    const auto r = mellin_transform_numeric(f, 0.0, v, quad_spec{1.0 / 64, 2.0, 3, 1e-5});
    EXPECT_NEAR(r.value.real(), b3.mellin_transform(v), 1e-5) << "v = " << v;
  }
}

TEST(BSpline, Validation) { EXPECT_THROW(bspline_kernel(0), std::invalid_argument); }

TEST(Fejer, Values) {
  EXPECT_DOUBLE_EQ(fejer_kernel(pi)(1.0), 0.5);
  EXPECT_NEAR(fejer_kernel(pi)(std::exp(2.0)), 0.0, 1e-17);
  EXPECT_DOUBLE_EQ(fejer_kernel(1.0).mellin_transform(0.0), 1.0);
  EXPECT_DOUBLE_EQ(fejer_kernel(2.0).mellin_transform(1.0), 0.5);
  EXPECT_EQ(fejer_kernel(2.0).mellin_transform(2.5), 0.0);
  EXPECT_THROW(fejer_kernel(0.0), std::invalid_argument);
}

TEST(Jackson, Values) {
  EXPECT_DOUBLE_EQ(jackson_kernel(1.0, 2, 0.0, jackson_norm::paper)(1.0), 1.0 / paper_jackson_integral);
  EXPECT_NEAR(jackson_kernel(1.0, 2)(1.0), 3.0 / (8.0 * pi), 1e-16);
  EXPECT_NEAR(jackson_kernel(1.0, 2)(std::exp(4.0 * pi)), 0.0, 1e-18);
  EXPECT_NEAR(jackson_kernel(1.0, 1)(1.0), 1.0 / (2.0 * pi), 1e-16);
}

TEST(Jackson, TransformMatchesNumeric) {
  const auto j = jackson_kernel(1.0, 2);
  const expsamp::signal f([&](double t) { return j.at_log(t); }, "j12");
  EXPECT_NEAR(j.mellin_transform(0.0), 1.0, 1e-14);
  EXPECT_EQ(j.mellin_transform(1.0), 0.0);
  for (double v : {0.2, 0.5}) {
    const auto r = mellin_transform_numeric(f, 0.0, v, quad_spec{0.25, 4000.0, 1, 1e-4});
    EXPECT_NEAR(r.value.real(), j.mellin_transform(v), 1e-4) << "v = " << v;
  }
}

TEST(Kernels, EvenUpToPowerFactor) {
  const double c = 0.4;
  const std::vector<kernel> ks = {bspline_kernel(3, c), fejer_kernel(pi, c), jackson_kernel(1.0, 2, c)};
  for (const auto& k : ks) {
    for (double t : {0.1, 0.7, 1.3, 5.0}) {
      const double x = std::exp(t);
      EXPECT_NEAR(std::pow(x, c) * k(x), std::pow(1.0 / x, c) * k(1.0 / x), 1e-15) << k.name() << " t = " << t;
    }
  }
}

TEST(Partition, BSplineExact) {
  for (int n = 2; n <= 5; ++n) EXPECT_LT(partition_check(bspline_kernel(n), test_grid()), 1e-15) << "n = " << n;
}

TEST(Partition, FejerAndJackson) {
  EXPECT_LT(partition_check(fejer_kernel(1.0), test_grid()), 1e-8);
  EXPECT_LT(partition_check(jackson_kernel(1.0, 2), test_grid()), 1e-10);
}

TEST(Partition, UnsupportedWithoutDecay) {
  kernel k([](double t) { return std::exp(-t * t); }, "gauss", 0.0);
  EXPECT_THROW(partition_check(k, test_grid()), unsupported_kernel_error);
}

// Without the tail model the Fejer window deviation falls like 1/K.
TEST(Partition, FejerRawWindowDecaysLikeInverseK) {
  auto k = fejer_kernel(1.0);
  k.profile.reset();
  const double u = 0.3;
  const double d1 = std::abs(lattice_sum(k, u, 0.0, detail::weight_kind::signed_power, 256).value - 1.0);
  const double d2 = std::abs(lattice_sum(k, u, 0.0, detail::weight_kind::signed_power, 1024).value - 1.0);
  EXPECT_NEAR(d1 / d2, 4.0, 0.4);
}

TEST(Moments, BSplineExamples) {
  const auto b2 = bspline_kernel(2);
  for (double u : {0.0, 0.3, -1.7}) {
    EXPECT_NEAR(moment_m(b2, 1, std::exp(u)), 0.0, 1e-15);
    EXPECT_NEAR(moment_m(b2, 0, std::exp(u)), 1.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(moment_m(b2, 2, std::exp(0.5)), 0.25);
  EXPECT_DOUBLE_EQ(moment_M(b2, 1.0, std::exp(0.5)), 0.5);
  EXPECT_EQ(moment_M(b2, 2.0, 1.0), 0.0);
  // m_2(B_2) = u (1 - u) on one period, so it depends on x.
  EXPECT_NEAR(moment_m(b2, 2, std::exp(0.2)), 0.16, 1e-15);
}

TEST(Moments, BSplineIndependentOfX) {
  for (int n = 1; n <= 4; ++n) {
    const auto rep = make_condition_report(bspline_kernel(n + 1), test_grid(), {}, n);
    for (int j = 1; j <= n; ++j) EXPECT_LT(rep.moment_x_variation.at(j), 1e-12) << "n = " << n << " j = " << j;
  }
  // Irwin-Hall variance n/12.
  EXPECT_NEAR(moment_m(bspline_kernel(3), 2, 1.7), 0.25, 1e-14);
  EXPECT_NEAR(moment_m(bspline_kernel(4), 2, 0.3), 1.0 / 3.0, 1e-14);
}

TEST(Moments, JacksonSecondMomentMatchesIntegral) {
  const auto j = jackson_kernel(1.0, 2);
  const auto integral = jackson_weighted_integral(1.0, 2, 2, quad_spec{1.0, 4096.0, 1, 1e-6}, true);
  const double A = j.normalization * integral.value;
  for (double u : {0.0, 0.25, 0.5, 2.9}) {
    EXPECT_NEAR(moment_m(j, 1, std::exp(u)), 0.0, 1e-12) << "u = " << u;
    EXPECT_NEAR(moment_m(j, 2, std::exp(u)), A, 1e-5) << "u = " << u;
    EXPECT_NEAR(moment_m(j, 2, std::exp(u)), 12.0, 1e-12) << "u = " << u;
  }
}

TEST(Moments, FejerDivergence) {
  const auto f = fejer_kernel(pi);
  EXPECT_THROW(moment_M(f, 1.0, 2.0), divergence_error);
  EXPECT_THROW(moment_m(f, 1, 2.0), divergence_error);
  EXPECT_THROW(sup_abs_moment(f, 1.0), divergence_error);
  EXPECT_GT(moment_M(f, 0.5, 2.0), 0.0);
  EXPECT_THROW(moment_M(jackson_kernel(1.0, 2), 3.0, 2.0), divergence_error);
}

TEST(Moments, Validation) {
  EXPECT_THROW(moment_m(bspline_kernel(2), -1, 1.0), std::invalid_argument);
  EXPECT_THROW(moment_m(bspline_kernel(2), 1, 0.0), std::invalid_argument);
  EXPECT_THROW(moment_M(bspline_kernel(2), 0.0, 1.0), std::invalid_argument);
}

TEST(DecayProfile, BSplineZeroBeyondSupport) {
  const auto p = decay_profile(bspline_kernel(2), {1.0, 2.0, 5.0}, test_grid(), 0.0);
  for (const auto& [r, s] : p) EXPECT_EQ(s, 0.0) << "r = " << r;
}

TEST(DecayProfile, FejerWithinEnvelope) {
  const std::vector<double> radii = {2.0, 4.0, 16.0, 64.0, 256.0};
  const auto p = decay_profile(fejer_kernel(pi), radii, test_grid(), 0.0);
  double zeta32 = 0.0;
  for (int k = 1; k <= 2000000; ++k) zeta32 += std::pow(static_cast<double>(k), -1.5);
  zeta32 += 2.0 / std::sqrt(2000000.5);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double env = (2.0 / pi) / std::sqrt(p[i].first) * (1.0 + 2.0 * zeta32);
    EXPECT_LE(p[i].second, env) << "r = " << p[i].first;
    if (i > 0) {
      EXPECT_LE(p[i].second, p[i - 1].second);
    }
  }
}

TEST(DecayProfile, JacksonSecondPowerTendsToZero) {
  const auto p = decay_profile(jackson_kernel(1.0, 2), {4.0, 32.0, 256.0}, test_grid(), 2.0);
  EXPECT_TRUE(std::isfinite(p[0].second));
  EXPECT_LT(p[2].second, p[1].second);
  EXPECT_LT(p[1].second, p[0].second);
  EXPECT_LT(p[2].second, 1.0);
}

TEST(DecayProfile, DivergentPairAndValidation) {
  EXPECT_THROW(decay_profile(fejer_kernel(pi), {1.0}, test_grid(), 1.0), divergence_error);
  EXPECT_THROW(decay_profile(fejer_kernel(pi), {2.0, 1.0}, test_grid(), 0.0), std::invalid_argument);
}

TEST(ConditionReport, Invariants) {
  const std::vector<kernel> ks = {bspline_kernel(2), fejer_kernel(1.0), jackson_kernel(1.0, 2)};
  for (const auto& k : ks) {
    const auto rep = make_condition_report(k, test_grid(), {1.0, 2.0, 8.0, 32.0}, 2);
    EXPECT_GE(rep.M0, 1.0 - rep.partition_max_dev) << k.name();
    for (std::size_t i = 1; i < rep.tail_profile.size(); ++i) {
      EXPECT_LE(rep.tail_profile[i].second, rep.tail_profile[i - 1].second) << k.name();
    }
  }
}

TEST(Poisson, BSpline) {
  const auto b2 = bspline_kernel(2);
  const auto s0 = poisson_check(b2, std::exp(0.3), 0);
  EXPECT_DOUBLE_EQ(s0.rhs, 1.0);
  EXPECT_NEAR(s0.lhs, 1.0, 1e-15);
  const auto s = poisson_check(bspline_kernel(3), std::exp(0.3), 20);
  EXPECT_NEAR(s.rhs, 1.0, 1e-15);
  EXPECT_NEAR(s.lhs, s.rhs, 1e-15);
}

TEST(Poisson, BandLimitedKernels) {
  for (double u : {0.0, 0.37, -2.2}) {
    const auto f = poisson_check(fejer_kernel(1.0), std::exp(u), 5);
    EXPECT_EQ(f.rhs, 1.0);
    EXPECT_NEAR(f.lhs, 1.0, 1e-12);
    const auto j = poisson_check(jackson_kernel(1.0, 2), std::exp(u), 5);
    EXPECT_NEAR(j.rhs, 1.0, 1e-14);
    EXPECT_NEAR(j.lhs, 1.0, 1e-12);
  }
}

TEST(Poisson, MissingTransformIsUnsupported) {
  kernel k([](double t) { return std::exp(-t * t); }, "gauss", 0.0);
  EXPECT_THROW(poisson_check(k, 1.0, 1), unsupported_kernel_error);
}

TEST(LatticeSum, NonCompactNeedsZeroC) {
  EXPECT_THROW(moment_m(fejer_kernel(pi, 0.5), 0, 1.0), unsupported_kernel_error);
}
