#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "signal.hpp"
#include "special_fn.hpp"

namespace expsamp {

/// Generalized Stirling numbers of the second kind S_c(r, k), 0 <= k <= r <= max_r.
/// Filled completely on construction and immutable afterwards, so a shared
/// instance is safe to read from any number of threads.
class stirling_table {
 public:
  stirling_table(double c, int max_r) : c_(c), max_r_(max_r) {
    if (max_r < 0) throw std::invalid_argument("stirling_table: max_r must be >= 0");
    rows_.resize(static_cast<std::size_t>(max_r) + 1);
    rows_[0] = {1.0};
    for (int r = 0; r < max_r; ++r) {
      auto& next = rows_[static_cast<std::size_t>(r) + 1];
      const auto& cur = rows_[static_cast<std::size_t>(r)];
      next.assign(static_cast<std::size_t>(r) + 2, 0.0);
      next[0] = c * cur[0];
      for (int k = 1; k <= r; ++k) next[k] = cur[k - 1] + (c + k) * cur[k];
      next[r + 1] = 1.0;
    }
  }

  double c() const noexcept { return c_; }
  int max_r() const noexcept { return max_r_; }

  double at(int r, int k) const {
    if (r < 0 || r > max_r_) throw std::invalid_argument("stirling_table: r out of range");
    if (k < 0 || k > r) throw std::invalid_argument("stirling_table: k must satisfy 0 <= k <= r");
    return rows_[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
  }

 private:
  double c_;
  int max_r_;
  std::vector<std::vector<double>> rows_;
};

inline double stirling(double c, int r, int k) {
  if (r < 0) throw std::invalid_argument("stirling: r must be >= 0");
  if (k < 0 || k > r) throw std::invalid_argument("stirling: k must satisfy 0 <= k <= r");
  return stirling_table(c, r).at(r, k);
}

namespace detail {

/// Fornberg's recursion: weights[m][j] approximate the m-th derivative at 0 from
/// samples at nodes[j], for m = 0..max_order.
inline std::vector<std::vector<double>> fornberg_weights(const std::vector<double>& nodes, int max_order) {
  const std::size_t n = nodes.size();
  const auto M = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> w(M + 1, std::vector<double>(n, 0.0));
  w[0][0] = 1.0;
  double c1 = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    const std::size_t mn = std::min(i, M);
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t m = mn; m >= 1; --m) {
          w[m][i] = c1 * (static_cast<double>(m) * w[m - 1][i - 1] - nodes[i - 1] * w[m][i - 1]) / c2;
        }
        w[0][i] = -c1 * nodes[i - 1] * w[0][i - 1] / c2;
      }
      for (std::size_t m = mn; m >= 1; --m) {
        w[m][j] = (nodes[i] * w[m][j] - static_cast<double>(m) * w[m - 1][j]) / c3;
      }
      w[0][j] = nodes[i] * w[0][j] / c3;
    }
    c1 = c2;
  }
  return w;
}

/// Coefficients of D(D-1)...(D-k+1), i.e. signed Stirling numbers of the first kind.
inline std::vector<double> falling_factorial_poly(int k) {
  std::vector<double> p{1.0};
  for (int i = 0; i < k; ++i) {
    std::vector<double> q(p.size() + 1, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      q[j + 1] += p[j];
      q[j] -= static_cast<double>(i) * p[j];
    }
    p = std::move(q);
  }
  return p;
}

}  // namespace detail

inline constexpr int max_mellin_derivative_order = 6;

/// Relative log-step defaults: 1e-3 for r <= 2, 1e-2 for r >= 3.
inline double default_mellin_step(int r) { return r <= 2 ? 1e-3 : 1e-2; }

/// Theta_c^r f(x) = sum_k S_c(r,k) x^k f^{(k)}(x). The ordinary derivatives come
/// from second-order central differences of g(t) = f(x e^t) on the geometric
/// nodes x e^{jh}, converted through x^k d^k/dx^k = D(D-1)...(D-k+1), D = d/dt.
/// Truncation error is O(h^2).
inline double mellin_derivative(const signal& f, double x, int r, double c, double h) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("mellin_derivative: x must be > 0");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("mellin_derivative: h must be > 0");
  if (r < 1) throw std::invalid_argument("mellin_derivative: r must be >= 1");
  if (r > max_mellin_derivative_order) {
    throw std::invalid_argument("mellin_derivative: no stencil for r > 6");
  }
  const double lx = std::log(x);
  const int p = (r + 1) / 2;
  std::vector<double> nodes;
  std::vector<double> samples;
  // Fornberg wants the expansion point first, then neighbours outward.
  nodes.push_back(0.0);
  for (int j = 1; j <= p; ++j) {
    nodes.push_back(j);
    nodes.push_back(-j);
  }
  for (double node : nodes) samples.push_back(f.at_log(lx + node * h));

  std::vector<double> dj(static_cast<std::size_t>(r) + 1, 0.0);
  dj[0] = samples[0];
  for (int j = 1; j <= r; ++j) {
    const int pj = (j + 1) / 2;
    std::vector<double> sub(nodes.begin(), nodes.begin() + 2 * pj + 1);
    const auto w = detail::fornberg_weights(sub, j);
    double s = 0.0;
    for (std::size_t i = 0; i < sub.size(); ++i) s += w[static_cast<std::size_t>(j)][i] * samples[i];
    dj[static_cast<std::size_t>(j)] = s / std::pow(h, j);
  }

  const stirling_table table(c, r);
  double result = 0.0;
  for (int k = 0; k <= r; ++k) {
    const auto ff = detail::falling_factorial_poly(k);
    double xk_fk = 0.0;
    for (int j = 0; j <= k; ++j) xk_fk += ff[static_cast<std::size_t>(j)] * dj[static_cast<std::size_t>(j)];
    result += table.at(r, k) * xk_fk;
  }
  return result;
}

inline double mellin_derivative(const signal& f, double x, int r, double c) {
  return mellin_derivative(f, x, r, c, default_mellin_step(r));
}

/// Largest |f(s) - f(t)| over grid pairs with |log s - log t| <= delta. A lower
/// bound of the true modulus, nondecreasing in delta for a fixed grid.
inline double log_modulus(const signal& f, double delta, const log_grid& grid) {
  if (grid.empty()) throw std::invalid_argument("log_modulus: empty grid");
  detail::require_positive(delta, "log_modulus delta");
  const auto& t = grid.points();
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = f.at_log(t[i]);

  // Sliding window [i, j) with t[j-1] - t[i] <= delta; monotone deques of indices.
  std::deque<std::size_t> maxq;
  std::deque<std::size_t> minq;
  double best = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    while (j < t.size() && t[j] - t[i] <= delta) {
      while (!maxq.empty() && v[maxq.back()] <= v[j]) maxq.pop_back();
      maxq.push_back(j);
      while (!minq.empty() && v[minq.back()] >= v[j]) minq.pop_back();
      minq.push_back(j);
      ++j;
    }
    best = std::max(best, v[maxq.front()] - v[minq.front()]);
    if (maxq.front() == i) maxq.pop_front();
    if (minq.front() == i) minq.pop_front();
  }
  return best;
}

/// Largest change of f between neighbouring grid points; the amount by which
/// log_modulus can undershoot the true modulus (up to a factor 2).
inline double grid_resolution_slack(const signal& f, const log_grid& grid) {
  const auto& t = grid.points();
  double best = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    best = std::max(best, std::abs(f.at_log(t[i]) - f.at_log(t[i - 1])));
  }
  return best;
}

/// (tau_h^c f)(x) = h^c f(h x).
inline signal mellin_translation(const signal& f, double h, double c) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("mellin_translation: h must be > 0");
  const double lh = std::log(h);
  const double scale = std::exp(c * lh);
  signal g([f, lh, scale](double t) { return scale * f.at_log(lh + t); }, f.name() + "_translated");
  if (f.bound) g.bound = *f.bound * scale;
  g.band_limit_T = f.band_limit_T;
  g.mellin_c = f.mellin_c;
  return g;
}

struct mellin_value {
  std::complex<double> value;
  double err_est = 0.0;
};

/// [f]^_M(c + iv) = integral of u^{c+iv-1} f(u) du, computed on t = log u as the
/// integral of e^{(c+iv)t} f(e^t) dt with the trapezoid rule. The tail beyond
/// +-half_width is bounded from f.decay when present.
inline mellin_value mellin_transform_numeric(const signal& f, double c, double v, const quad_spec& quad) {
  tail_bound_fn tail;
  if (f.decay && f.decay->exponent > 1.0 && f.mellin_c == c) {
    const auto d = *f.decay;
    tail = [d](double L) { return 2.0 * d.constant * std::pow(L, 1.0 - d.exponent) / (d.exponent - 1.0); };
  }
  const auto re = trapezoid_line([&](double t) { return std::exp(c * t) * f.at_log(t) * std::cos(v * t); }, quad, tail);
  quad_result im{};
  if (v != 0.0) {
    im = trapezoid_line([&](double t) { return std::exp(c * t) * f.at_log(t) * std::sin(v * t); }, quad, tail);
  }
  mellin_value out{{re.value, im.value}, std::hypot(re.err_est, im.err_est)};
  if (!(out.err_est <= quad.tol)) {
    throw convergence_error("Mellin transform quadrature did not reach tolerance", std::abs(out.value), out.err_est);
  }
  return out;
}

/// ||f||_{X_c} = integral |f(u)| u^{c-1} du, same quadrature as the transform.
inline quad_result xc_norm_numeric(const signal& f, double c, const quad_spec& quad) {
  return trapezoid_line([&](double t) { return std::exp(c * t) * std::abs(f.at_log(t)); }, quad);
}

}  // namespace expsamp
