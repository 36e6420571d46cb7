#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "expsamp/mellin_ops.hpp"

using namespace expsamp;

TEST(Stirling, ClassicalValuesAtCZero) {
  const stirling_table s(0.0, 6);
  EXPECT_EQ(s.at(4, 2), 7.0);
  EXPECT_EQ(s.at(5, 3), 25.0);
  EXPECT_EQ(s.at(6, 3), 90.0);
  EXPECT_EQ(s.at(6, 0), 0.0);
  EXPECT_EQ(s.at(6, 6), 1.0);
}

TEST(Stirling, GeneralizedLowOrders) {
  const double c = 0.7;
  EXPECT_DOUBLE_EQ(stirling(c, 1, 0), c);
  EXPECT_DOUBLE_EQ(stirling(c, 2, 0), c * c);
  EXPECT_DOUBLE_EQ(stirling(c, 2, 1), 2.0 * c + 1.0);
  EXPECT_THROW(stirling(c, 2, 3), std::invalid_argument);
  EXPECT_THROW(stirling(c, -1, 0), std::invalid_argument);
}

TEST(Stirling, TableRangeChecks) {
  const stirling_table s(1.0, 3);
  EXPECT_THROW(s.at(4, 1), std::invalid_argument);
  EXPECT_THROW(s.at(2, -1), std::invalid_argument);
}

// Theta_c^r x^a = (a + c)^r x^a.
TEST(MellinDerivative, PowerFunctionEigenvalue) {
  const double a = 0.7;
  const double c = 0.3;
  const expsamp::signal f = signal_from_x([a](double x) { return std::pow(x, a); });
  const double x = 1.9;
  for (int r = 1; r <= 6; ++r) {
    const double exact = std::pow(a + c, r) * std::pow(x, a);
    // O(h^2) with h = 1e-3 (r <= 2) or 1e-2 (r >= 3).
    const double tol = r <= 2 ? 1e-6 : 3e-3;
    EXPECT_NEAR(mellin_derivative(f, x, r, c), exact, tol * std::abs(exact)) << "r = " << r;
  }
}

TEST(MellinDerivative, LogSignal) {
  const expsamp::signal f = log_signal();
  EXPECT_NEAR(mellin_derivative(f, 2.0, 1, 0.0), 1.0, 1e-10);
  EXPECT_NEAR(mellin_derivative(f, 2.0, 2, 0.0), 0.0, 1e-6);
}

// Oracle: Theta_c^r = (D + c)^r with D = d/dt on g(t) = f(e^t), expanded by the
// binomial theorem; the D^k values below are from 40-digit differentiation.
TEST(MellinDerivative, BinomialOracleOnFejerSignal) {
  const expsamp::signal f = fejer_signal(pi);
  struct point {
    double t;
    double d[5];
  };
  const std::vector<point> pts = {
      {2.7, {0.0220680769728561426, 0.018978119581182271904, -0.1147990531844929974, -0.1091530729843534954,
             1.3081622671601047027}},
      {-0.6, {0.3684198646611252153, 0.38714762815857629642, -0.32417337810170762044, -1.3946604593779146327,
              0.6821828330580218924}},
  };
  for (double c : {0.0, 0.7}) {
    for (const auto& p : pts) {
      for (int r = 1; r <= 4; ++r) {
        double oracle = 0.0;
        for (int k = 0; k <= r; ++k) oracle += detail::binomial(r, k) * std::pow(c, r - k) * p.d[k];
        const double got = mellin_derivative(f, std::exp(p.t), r, c);
        const double tol = r <= 2 ? 1e-6 : 1e-3;
        EXPECT_NEAR(got, oracle, tol) << "t = " << p.t << " r = " << r << " c = " << c;
      }
    }
  }
}

TEST(MellinDerivative, SecondOrderConvergenceInStep) {
  const expsamp::signal f = fejer_signal(pi);
  const double exact = -0.1147990531844929974;
  const double e1 = std::abs(mellin_derivative(f, std::exp(2.7), 2, 0.0, 2e-2) - exact);
  const double e2 = std::abs(mellin_derivative(f, std::exp(2.7), 2, 0.0, 1e-2) - exact);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(MellinDerivative, FourthOrderStepHalving) {
  const expsamp::signal f = fejer_signal(pi);
  const double exact = 1.3081622671601047027;
  const double e1 = std::abs(mellin_derivative(f, std::exp(2.7), 4, 0.0, 2e-2) - exact);
  const double e2 = std::abs(mellin_derivative(f, std::exp(2.7), 4, 0.0, 1e-2) - exact);
  EXPECT_NEAR(e1 / e2, 4.0, 0.3);
}

TEST(MellinDerivative, Validation) {
  const expsamp::signal f = log_signal();
  EXPECT_THROW(mellin_derivative(f, 0.0, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(mellin_derivative(f, 1.0, 0, 0.0), std::invalid_argument);
  EXPECT_THROW(mellin_derivative(f, 1.0, 7, 0.0), std::invalid_argument);
  EXPECT_THROW(mellin_derivative(f, 1.0, 1, 0.0, -1.0), std::invalid_argument);
}

TEST(LogModulus, LinearSignalOnUniformGrid) {
  const auto g = log_grid::uniform(-1.0, 1.0, 201);  // spacing 0.01
  const expsamp::signal f = log_signal();
  EXPECT_NEAR(log_modulus(f, 0.1 + 1e-9, g), 0.1, 1e-12);
  EXPECT_NEAR(log_modulus(f, 0.105, g), 0.1, 1e-12);
  EXPECT_NEAR(log_modulus(f, 5.0, g), 2.0, 1e-12);
  EXPECT_NEAR(grid_resolution_slack(f, g), 0.01, 1e-12);
}

TEST(LogModulus, NondecreasingInDelta) {
  const auto g = log_grid::uniform(-6.0, 6.0, 2001);
  const expsamp::signal f = fejer_signal(pi);
  double prev = 0.0;
  for (double d = 0.001; d < 4.0; d *= 1.3) {
    const double w = log_modulus(f, d, g);
    EXPECT_GE(w, prev);
    prev = w;
  }
}

TEST(LogModulus, BruteForceAgreement) {
  const auto g = log_grid::uniform(-3.0, 3.0, 301);
  const expsamp::signal f = fejer_signal(pi);
  const double delta = 0.37;
  double brute = 0.0;
  const auto& t = g.points();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i; j < t.size() && t[j] - t[i] <= delta; ++j) {
      brute = std::max(brute, std::abs(f.at_log(t[i]) - f.at_log(t[j])));
    }
  }
  EXPECT_EQ(log_modulus(f, delta, g), brute);
}

TEST(LogModulus, Validation) {
  EXPECT_THROW(log_modulus(log_signal(), 0.1, log_grid{}), std::invalid_argument);
  EXPECT_THROW(log_modulus(log_signal(), 0.0, log_grid::standard()), std::invalid_argument);
}

TEST(MellinTranslation, ScalesAndShifts) {
  const expsamp::signal f = signal_from_x([](double x) { return x * x; });
  const expsamp::signal g = mellin_translation(f, 2.0, 1.0);
  EXPECT_NEAR(g(3.0), 2.0 * 36.0, 1e-12);
}

// Gaussian on the log scale: [f]^(c + iv) = sqrt(pi) exp((c + iv)^2 / 4).
TEST(MellinTransform, GaussianClosedForm) {
  const expsamp::signal f([](double t) { return std::exp(-t * t); }, "gauss");
  const quad_spec spec{0.25, 14.0, 2, 1e-10};
  for (double c : {0.0, 0.5}) {
    for (double v : {0.0, 1.0, 2.5}) {
      const auto r = mellin_transform_numeric(f, c, v, spec);
      const std::complex<double> s(c, v);
      const auto exact = std::sqrt(pi) * std::exp(s * s / 4.0);
      EXPECT_NEAR(r.value.real(), exact.real(), 1e-12);
      EXPECT_NEAR(r.value.imag(), exact.imag(), 1e-12);
    }
  }
}

TEST(MellinTransform, NormOfGaussian) {
  const expsamp::signal f([](double t) { return -std::exp(-t * t); }, "neg_gauss");
  const auto r = xc_norm_numeric(f, 0.0, quad_spec{0.25, 14.0, 2, 1e-10});
  EXPECT_NEAR(r.value, std::sqrt(pi), 1e-12);
}

TEST(MellinTransform, ConvergenceFailureIsReported) {
  const expsamp::signal f = fejer_signal(1.0);
  EXPECT_THROW(mellin_transform_numeric(f, 0.0, 0.0, quad_spec{0.5, 50.0, 1, 1e-10}), convergence_error);
}
