#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kernels.hpp"
#include "mellin_ops.hpp"
#include "sampling.hpp"
#include "signal.hpp"

namespace expsamp {

struct rate_fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int rows_used = 0;
};

/// Least squares of log(abs_err) on log(param) over rows with positive error.
inline rate_fit fit_order(const error_series& series) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : series.rows()) {
    if (r.abs_err > 0.0 && r.param > 0.0) {
      xs.push_back(std::log(r.param));
      ys.push_back(std::log(r.abs_err));
    }
  }
  if (xs.size() < 3) {
    throw insufficient_data_error("fit_order needs at least 3 rows with positive error, got " +
                                  std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw insufficient_data_error("fit_order needs at least two distinct parameters");
  rate_fit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.rows_used = static_cast<int>(xs.size());
  return fit;
}

/// Plan used by the harnesses: exact window for compact kernels, otherwise a
/// certified tail tolerance.
inline sampling_plan harness_plan(const kernel& k, double w, double eps = 1e-14) {
  return k.compact() ? sampling_plan::compact_exact(w, k.c()) : sampling_plan::tail_tol(w, eps, k.c());
}

struct bound_violation {
  double w = 0.0;
  double log_x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct bound_report {
  double M0 = 0.0;
  double M1 = 0.0;
  int checks = 0;
  double min_margin = std::numeric_limits<double>::infinity();  // min of rhs - lhs
  std::vector<bound_violation> violations;
};

/// Checks |S_w f - f| <= (M_0 + M_1) omega(f, 1/w) at every grid point for each w.
/// omega is estimated on a fine internal grid (spacing <= delta/8 covering the
/// test grid +-16); one neighbour step of f is added as estimator slack since the
/// grid estimate can only undershoot. The left side includes the window tail bound.
inline bound_report check_quantitative_bound(const kernel& k, const signal& f, const std::vector<double>& w_list,
                                             const log_grid& grid) {
  if (grid.empty()) throw std::invalid_argument("check_quantitative_bound: empty grid");
  if (k.abs_moment_divergent_from && *k.abs_moment_divergent_from <= 1.0) {
    throw unsupported_kernel_error("check_quantitative_bound: M_1 of kernel '" + k.name() + "' is infinite");
  }
  bound_report rep;
  rep.M0 = sup_abs_moment(k, 0.0);
  rep.M1 = sup_abs_moment(k, 1.0);
  const double lo = grid.points().front() - 16.0;
  const double hi = grid.points().back() + 16.0;
  for (double w : w_list) {
    detail::require_positive(w, "w");
    const double delta = 1.0 / w;
    const double step = std::min(delta / 8.0, 1e-2);
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    const auto fine = log_grid::uniform(lo, hi, n);
    const double omega = log_modulus(f, delta, fine) + grid_resolution_slack(f, fine);
    const double rhs = (rep.M0 + rep.M1) * omega;
    const auto plan = harness_plan(k, w, 1e-12);
    for (double t : grid.points()) {
      const double x = std::exp(t);
      const auto s = generalized_sample_detail(k, f, plan, x);
      const double lhs = std::abs(s.value - f.at_log(t)) + s.tail_bound;
      ++rep.checks;
      rep.min_margin = std::min(rep.min_margin, rhs - lhs);
      if (lhs > rhs) rep.violations.push_back({w, t, lhs, rhs});
    }
  }
  return rep;
}

struct voronovskaja_result {
  std::vector<double> w;
  std::vector<double> sequence;       // w^n (S_w f(x) - f(x))
  double extrapolated = 0.0;
  std::optional<double> target;       // m_n Theta^n f(x) / n! when m_1..m_{n-1} vanish
  std::vector<double> moments;        // m_1..m_n at x
};

/// Limit of w^n (S_w f - f)(x) along a ratio-2 w sequence; Richardson removes
/// the w^{-1} and w^{-2} terms of the approach, using the last three entries.
inline voronovskaja_result voronovskaja_limit(const kernel& k, const signal& f, double x, int n,
                                              const std::vector<double>& w_list) {
  if (n < 1) throw std::invalid_argument("voronovskaja_limit: n must be >= 1");
  detail::require_positive(x, "x");
  if (w_list.size() < 3) throw std::invalid_argument("voronovskaja_limit needs at least 3 rates");
  for (std::size_t i = 1; i < w_list.size(); ++i) {
    if (w_list[i] != 2.0 * w_list[i - 1]) throw std::invalid_argument("voronovskaja_limit: rates must double");
  }
  if (!k.compact()) {
    if (!k.decay || k.decay->exponent <= n + 1.0) {
      throw unsupported_kernel_error("voronovskaja_limit: M_" + std::to_string(n) + " of kernel '" + k.name() +
                                     "' is not known to be finite");
    }
  }
  voronovskaja_result res;
  const double fx = f(x);
  for (double w : w_list) {
    const double s = generalized_sample(k, f, harness_plan(k, w, 1e-16), x);
    res.w.push_back(w);
    res.sequence.push_back(std::pow(w, n) * (s - fx));
  }
  const auto m = res.sequence.size();
  const double a = res.sequence[m - 3];
  const double b = res.sequence[m - 2];
  const double c = res.sequence[m - 1];
  const double r1a = 2.0 * b - a;
  const double r1b = 2.0 * c - b;
  res.extrapolated = (4.0 * r1b - r1a) / 3.0;

  bool lower_vanish = true;
  for (int j = 1; j <= n; ++j) {
    const double mj = moment_m(k, j, x);
    res.moments.push_back(mj);
    if (j < n && std::abs(mj) > 1e-10) lower_vanish = false;
  }
  if (lower_vanish) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    res.target = res.moments.back() * mellin_derivative(f, x, n, k.c()) / fact;
  }
  return res;
}

/// max over the grid of |S_w f - f|.
inline double uniform_error(const kernel& k, const signal& f, double w, const log_grid& grid) {
  if (grid.empty()) throw std::invalid_argument("uniform_error: empty grid");
  const auto plan = harness_plan(k, w);
  double worst = 0.0;
  for (double t : grid.points()) {
    worst = std::max(worst, std::abs(generalized_sample(k, f, plan, std::exp(t)) - f.at_log(t)));
  }
  return worst;
}

}  // namespace expsamp
