#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "special_fn.hpp"

namespace expsamp {

/// |x^c f(x)| <= constant * |log x|^{-exponent} for large |log x|.
struct decay_law {
  double exponent = 0.0;
  double constant = 0.0;
};

/// Parameters of the Mellin-Fejer function F^c_rho, kept so that closed-form
/// evaluators can check what they are handed.
struct fejer_params {
  double rho = pi;
  double c = 0.0;
};

/// A real function on (0, inf), stored on the log scale: at_log(t) = f(e^t).
class signal {
 public:
  using log_function = std::function<double(double)>;

  signal() = default;
  explicit signal(log_function f_log, std::string name = "f") : f_log_(std::move(f_log)), name_(std::move(name)) {}

  double at_log(double t) const { return f_log_(t); }

  double operator()(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("signal evaluated at x <= 0");
    return f_log_(std::log(x));
  }

  const std::string& name() const noexcept { return name_; }

  std::optional<double> bound;         // sup |f|
  std::optional<double> band_limit_T;  // Mellin transform vanishes for |v| > T
  double mellin_c = 0.0;
  std::optional<decay_law> decay;
  std::optional<fejer_params> fejer;

 private:
  log_function f_log_;
  std::string name_;
};

/// F^c_rho(x) = (x^{-c} / 2 pi) rho sinc^2((rho/pi) log sqrt x).
inline signal fejer_signal(double rho, double c = 0.0) {
  detail::require_positive(rho, "rho");
  detail::require_finite(c, "c");
  signal s(
      [rho, c](double t) {
        const double v = sinc(rho * t / (2.0 * pi));
        return std::exp(-c * t) * rho / (2.0 * pi) * v * v;
      },
      "fejer");
  if (c == 0.0) s.bound = rho / (2.0 * pi);
  s.band_limit_T = rho;
  s.mellin_c = c;
  s.decay = decay_law{2.0, 2.0 / (pi * rho)};
  s.fejer = fejer_params{rho, c};
  return s;
}

inline signal constant_signal(double value) {
  signal s([value](double) { return value; }, "constant");
  s.bound = std::abs(value);
  return s;
}

/// f(x) = log x; unbounded, used for the Mellin-derivative and modulus checks.
inline signal log_signal() {
  return signal([](double t) { return t; }, "log");
}

/// A signal from an ordinary x-domain function.
inline signal signal_from_x(std::function<double(double)> f, std::string name = "f") {
  return signal([f = std::move(f)](double t) { return f(std::exp(t)); }, std::move(name));
}

/// Points on the log scale, sorted ascending.
class log_grid {
 public:
  log_grid() = default;
  explicit log_grid(std::vector<double> log_points);

  static log_grid uniform(double lo, double hi, std::size_t n) {
    if (n == 0) return log_grid{};
    if (!(hi >= lo)) throw std::invalid_argument("log_grid::uniform requires hi >= lo");
    std::vector<double> p(n);
    if (n == 1) {
      p[0] = lo;
    } else {
      const double h = (hi - lo) / static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i) p[i] = lo + static_cast<double>(i) * h;
      p.back() = hi;
    }
    return log_grid(std::move(p));
  }

  /// 4096 points over log x in [-6, 6].
  static log_grid standard() { return uniform(-6.0, 6.0, 4096); }

  const std::vector<double>& points() const noexcept { return t_; }
  std::size_t size() const noexcept { return t_.size(); }
  bool empty() const noexcept { return t_.empty(); }

 private:
  std::vector<double> t_;
};

inline log_grid::log_grid(std::vector<double> log_points) : t_(std::move(log_points)) {
  for (double t : t_) detail::require_finite(t, "log_grid point");
  std::sort(t_.begin(), t_.end());
}

}  // namespace expsamp
