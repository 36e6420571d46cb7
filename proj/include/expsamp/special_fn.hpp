#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace expsamp {

inline constexpr double pi = std::numbers::pi;

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace detail

/// sin(pi*u) with exact argument reduction, so integer u gives an exact zero
/// and half-integers give exactly +-1.
inline double sin_pi(double u) {
  const double r = std::remainder(u, 2.0);  // exact, r in [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(pi * r);
}

inline double cos_pi(double u) {
  const double r = std::remainder(u, 2.0);
  if (r == 0.5 || r == -0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0 || r == -1.0) return -1.0;
  return std::cos(pi * r);
}

/// Below this |u| sinc switches to its even Taylor polynomial.
inline constexpr double sinc_taylor_threshold = 1e-4;

/// 1 - (pi u)^2/6 + (pi u)^4/120.
inline double sinc_taylor(double u) noexcept {
  const double z = (pi * u) * (pi * u);
  return 1.0 - z / 6.0 * (1.0 - z / 20.0);
}

/// sin(pi u)/(pi u), sinc(0) = 1. Evaluated on |u| so the result is exactly even.
inline double sinc(double u) {
  detail::require_finite(u, "sinc argument");
  const double a = std::abs(u);
  if (a < sinc_taylor_threshold) return sinc_taylor(a);
  return sin_pi(a) / (pi * a);
}

/// lin_c on the log scale: t = log x, returns e^{-ct} sinc(t).
inline double lin_log(double t, double c) {
  detail::require_finite(t, "lin_c log argument");
  return std::exp(-c * t) * sinc(t);
}

/// lin_c(x) = x^{-c} sinc(log x), continuous extension lin_c(1) = 1.
inline double lin_c(double x, double c) {
  if (!(x > 0.0)) throw std::invalid_argument("lin_c requires x > 0");
  detail::require_finite(x, "lin_c argument");
  return lin_log(std::log(x), c);
}

}  // namespace expsamp
