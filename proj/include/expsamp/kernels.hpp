#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "signal.hpp"
#include "special_fn.hpp"
#include "summation.hpp"

namespace expsamp {

/// Exact large-|t| profile phi(e^t) = amp * sin^{2 beta}(t / scale) / t^{2 beta}
/// (for c = 0). Shared by the Fejer and Jackson families; it lets lattice-sum
/// tails be summed asymptotically instead of only bounded.
struct sin_power_profile {
  double amp = 0.0;
  double scale = 1.0;
  int beta = 1;
};

/// A kernel phi on (0, inf) stored on the log scale, with analytic metadata.
class kernel {
 public:
  using log_function = std::function<double(double)>;

  kernel(log_function phi_log, std::string name, double c)
      : phi_log_(std::move(phi_log)), name_(std::move(name)), c_(c) {}

  double at_log(double t) const { return phi_log_(t); }
  double operator()(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("kernel evaluated at x <= 0");
    return phi_log_(std::log(x));
  }

  const std::string& name() const noexcept { return name_; }
  double c() const noexcept { return c_; }
  bool compact() const noexcept { return support_log_radius.has_value(); }

  std::optional<double> support_log_radius;    // phi(e^t) = 0 for |t| >= R
  std::optional<decay_law> decay;              // |phi(e^t) e^{ct}| <= A |t|^{-p}
  std::optional<sin_power_profile> profile;    // exact tail shape, c = 0 part
  std::function<double(double)> mellin_transform;  // v -> [phi]^_M(c + iv), empty if unknown
  std::optional<double> band_limit;            // transform vanishes for |v| >= band_limit
  std::map<int, double> known_moments;         // x-independent algebraic moments m_j
  std::optional<double> abs_moment_divergent_from;  // M_alpha = +inf for alpha >= this
  double normalization = 1.0;                  // multiplicative constant in the definition

 private:
  log_function phi_log_;
  std::string name_;
  double c_;
};

namespace detail {

/// Central B-spline of order n (support [-n/2, n/2]) by the truncated-power sum.
/// The truncated power is right-continuous: (0)_+^m = 0 for m >= 1, and the
/// zeroth power is the indicator of z > 0.
inline double central_bspline(int n, double t) {
  if (n >= 2 && std::abs(t) >= 0.5 * n) return 0.0;
  // Even for n >= 2; the left half has fewer and smaller terms to cancel.
  if (n >= 2) t = -std::abs(t);
  double s = 0.0;
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  for (int j = 0; j <= n; ++j) {
    const double z = 0.5 * n + t - j;
    if (z <= 0.0) continue;
    const double term = binomial(n, j) * (n == 1 ? 1.0 : std::pow(z, n - 1));
    s += (j % 2 == 0) ? term : -term;
  }
  return s / fact;
}

}  // namespace detail

/// B_{c,n}(x) = x^{-c} B_n(x), the Mellin analogue of the central B-spline.
inline kernel bspline_kernel(int n, double c = 0.0) {
  if (n < 1) throw std::invalid_argument("bspline_kernel: n must be >= 1");
  detail::require_finite(c, "c");
  kernel k([n, c](double t) { return std::exp(-c * t) * detail::central_bspline(n, t); },
           "B" + std::to_string(n), c);
  k.support_log_radius = 0.5 * n;
  k.mellin_transform = [n](double v) { return std::pow(sinc(v / (2.0 * pi)), n); };
  k.known_moments[0] = 1.0;
  k.known_moments[1] = 0.0;
  return k;
}

/// F^c_rho(x) = (x^{-c} / 2 pi) rho sinc^2((rho/pi) log sqrt x).
inline kernel fejer_kernel(double rho, double c = 0.0) {
  detail::require_positive(rho, "rho");
  detail::require_finite(c, "c");
  kernel k(
      [rho, c](double t) {
        const double v = sinc(rho * t / (2.0 * pi));
        return std::exp(-c * t) * rho / (2.0 * pi) * v * v;
      },
      "fejer", c);
  k.decay = decay_law{2.0, 2.0 / (pi * rho)};
  k.profile = sin_power_profile{2.0 / (pi * rho), 2.0 / rho, 1};
  k.mellin_transform = [rho](double v) { return std::max(0.0, 1.0 - std::abs(v) / rho); };
  k.band_limit = rho;
  k.abs_moment_divergent_from = 1.0;
  k.known_moments[0] = 1.0;
  return k;
}

enum class jackson_norm { analytic, paper };

/// J_{gamma,beta}(x) = d x^{-c} sinc^{2 beta}(log x / (2 gamma beta pi)).
/// jackson_norm::paper takes d from the truncated trapezoid with the pinned
/// step and width, which are only meaningful for (gamma, beta) = (1, 2).
inline kernel jackson_kernel(double gamma, int beta, double c = 0.0, jackson_norm mode = jackson_norm::analytic) {
  const double d = jackson_normalization(
      gamma, beta, mode == jackson_norm::paper ? norm_mode::paper_trapezoid : norm_mode::analytic_when_known);
  const double s = 2.0 * gamma * beta;
  kernel k(
      [d, s, beta, c](double t) {
        const double v = sinc(t / (s * pi));
        const double v2 = v * v;
        double p = v2;
        for (int i = 1; i < beta; ++i) p *= v2;
        return (c == 0.0 ? d : d * std::exp(-c * t)) * p;
      },
      "jackson", c);
  const double amp = d * std::pow(s, 2 * beta);
  k.decay = decay_law{2.0 * beta, amp};
  k.profile = sin_power_profile{amp, s, beta};
  k.normalization = d;
  // Transform is d s pi M_{2 beta}(v s / 2), M the central B-spline.
  k.mellin_transform = [d, s, beta](double v) { return d * s * pi * detail::central_bspline(2 * beta, 0.5 * v * s); };
  k.band_limit = 1.0 / gamma;
  k.abs_moment_divergent_from = 2.0 * beta - 1.0;
  k.known_moments[1] = 0.0;
  return k;
}

// ---------------------------------------------------------------------------
// Lattice sums  sum_k phi(e^{u-k}) w(k - u)  over k in Z, u = log x.

struct tail_sum {
  double value = 0.0;  // best estimate
  double bound = 0.0;  // certified bound on |true - value| from the tail treatment
};

namespace detail {

/// sum_{i>=0} (a+i)^{-q}, q > 1, a > 0.
inline double hurwitz_zeta(double q, double a) {
  double s = 0.0;
  while (a < 16.0) {
    s += std::pow(a, -q);
    a += 1.0;
  }
  const double inv = 1.0 / a;
  const double aq = std::pow(a, -q);
  s += a * aq / (q - 1.0) + 0.5 * aq + q * aq * inv / 12.0 -
       q * (q + 1) * (q + 2) * aq * inv * inv * inv / 720.0 +
       q * (q + 1) * (q + 2) * (q + 3) * (q + 4) * aq * std::pow(inv, 5) / 30240.0;
  return s;
}

/// sum_{i>=0} cos(omega (a+i)) (a+i)^{-q} by the Euler transform
/// S(b) = sum_{n<P} z^n Delta^n b_0 / (1-z)^{n+1} + (z/(1-z))^P S(Delta^P b), z = e^{i omega}.
/// b is completely monotone, so |S(Delta^P b)| <= |Delta^{P-1} b_0|.
inline tail_sum oscillatory_tail(double omega, double q, double a) {
  const double s_half = std::sin(0.5 * omega);
  const double zeta = hurwitz_zeta(q, a);
  if (std::abs(s_half) < 1e-15) return {std::cos(omega * a) * zeta, 0.0};
  constexpr int P = 6;
  const double ratio = 1.0 / (2.0 * std::abs(s_half));  // |z / (1 - z)|
  if (ratio * (q + P) / a > 0.5) return {0.0, zeta};
  double diff[P + 1];
  for (int i = 0; i <= P; ++i) diff[i] = std::pow(a + i, -q);
  std::complex<double> z = std::polar(1.0, omega);
  const std::complex<double> g = z / (1.0 - z);
  std::complex<double> gn = 1.0 / (1.0 - z);
  std::complex<double> acc = 0.0;
  double last = 0.0;
  for (int n = 0; n < P; ++n) {
    acc += gn * diff[0];
    gn *= g;
    last = std::abs(diff[0]);
    for (int i = 0; i < P - n; ++i) diff[i] = diff[i + 1] - diff[i];
  }
  const double est = (std::polar(1.0, omega * a) * acc).real();
  const double bnd = std::pow(ratio, P) * last + 1e-15 * std::abs(est);
  if (bnd >= zeta) return {0.0, zeta};
  return {est, bnd};
}

/// One-sided tail sum_{i>=0} |phi|(a+i) (a+i)^power for a kernel with a profile.
inline tail_sum profile_tail(const sin_power_profile& p, double power, double a) {
  const double q = 2.0 * p.beta - power;
  tail_sum out;
  const double norm = std::pow(4.0, p.beta);
  for (int m = 0; m <= p.beta; ++m) {
    double coef = binomial(2 * p.beta, p.beta - m) / norm;
    if (m > 0) coef *= (m % 2 == 0) ? 2.0 : -2.0;
    if (m == 0) {
      out.value += coef * hurwitz_zeta(q, a);
    } else {
      const auto t = oscillatory_tail(2.0 * m / p.scale, q, a);
      out.value += coef * t.value;
      out.bound += std::abs(coef) * t.bound;
    }
  }
  out.value *= p.amp;
  out.bound *= p.amp;
  out.bound += 1e-15 * std::abs(out.value);
  return out;
}

/// One-sided bound sum_{i>=0} A (a+i)^{-(p - power)}.
inline double decay_tail_bound(const decay_law& d, double power, double a) {
  const double q = d.exponent - power;
  return d.constant * (std::pow(a, -q) + std::pow(a, 1.0 - q) / (q - 1.0));
}

inline void require_convergent(const kernel& k, double power) {
  if (k.compact()) return;
  if (!k.decay) throw unsupported_kernel_error("kernel '" + k.name() + "' has no decay metadata");
  if (k.decay->exponent - power <= 1.0) {
    throw divergence_error("lattice sum of kernel '" + k.name() + "' with weight |t|^" + std::to_string(power) +
                           " diverges");
  }
  if (k.c() != 0.0) {
    throw unsupported_kernel_error("lattice sums of non-compact kernels require c = 0");
  }
}

enum class weight_kind { signed_power, absolute_power };

}  // namespace detail

inline constexpr long long default_lattice_window = 1024;

/// sum over k with |k - u| > r_min of phi(e^{u-k}) (k-u)^power (signed) or
/// |phi(e^{u-k})| |k-u|^power (absolute). Compact kernels are enumerated
/// exactly; otherwise the window [k0-K, k0+K] around k0 = round(u) is summed
/// outward with compensation and the remainder is taken from the kernel's tail
/// profile (asymptotic estimate + bound) or its decay law (bound only).
/// Signed mode needs an integer power.
inline tail_sum lattice_sum(const kernel& k, double u, double power, detail::weight_kind kind,
                            long long K = default_lattice_window, double r_min = -1.0) {
  detail::require_finite(u, "log x");
  const bool absolute = kind == detail::weight_kind::absolute_power;
  if (!absolute && power != std::floor(power)) throw std::invalid_argument("signed lattice sum needs integer power");
  detail::require_convergent(k, power);
  const int ipow = static_cast<int>(power);
  auto weight = [&](double d) {
    if (power == 0.0) return 1.0;
    if (absolute) return std::pow(std::abs(d), power);
    return std::pow(d, ipow);
  };

  long long lo;
  long long hi;
  const auto k0 = static_cast<long long>(std::llround(u));
  if (k.compact()) {
    const double R = *k.support_log_radius;
    lo = static_cast<long long>(std::floor(u - R));
    hi = static_cast<long long>(std::ceil(u + R));
  } else {
    if (K < 64) throw std::invalid_argument("lattice_sum: window K must be >= 64 for non-compact kernels");
    lo = k0 - K;
    hi = k0 + K;
  }
  compensated_sum acc;
  visit_outward(lo, hi, k0, [&](long long kk) {
    const double d = static_cast<double>(kk) - u;
    if (std::abs(d) <= r_min) return;
    double phi = k.at_log(u - static_cast<double>(kk));
    if (absolute) phi = std::abs(phi);
    acc.add(phi * weight(d));
  });
  tail_sum out{acc.value(), 0.0};
  if (k.compact()) return out;

  const double a_right = static_cast<double>(hi + 1) - u;
  const double a_left = u - static_cast<double>(lo - 1);
  const double left_sign = (!absolute && ipow % 2 == 1) ? -1.0 : 1.0;
  if (k.profile) {
    const auto r = detail::profile_tail(*k.profile, power, a_right);
    const auto l = detail::profile_tail(*k.profile, power, a_left);
    out.value += r.value + left_sign * l.value;
    out.bound += r.bound + l.bound;
  } else {
    out.bound += detail::decay_tail_bound(*k.decay, power, a_right) + detail::decay_tail_bound(*k.decay, power, a_left);
  }
  return out;
}

/// max over the grid of |sum_{|j|<=K} phi(e^{-j} u) - 1| plus the tail bound.
inline double partition_check(const kernel& k, const log_grid& grid, long long K = default_lattice_window) {
  if (grid.empty()) throw std::invalid_argument("partition_check: empty grid");
  if (!k.compact() && !k.decay) throw unsupported_kernel_error("partition_check: kernel has no decay metadata");
  double worst = 0.0;
  for (double u : grid.points()) {
    const auto s = lattice_sum(k, u, 0.0, detail::weight_kind::signed_power, K);
    worst = std::max(worst, std::abs(s.value - 1.0) + s.bound);
  }
  return worst;
}

/// m_j(phi, x) = sum_k phi(e^{-k} x) (k - log x)^j.
inline tail_sum moment_m_detail(const kernel& k, int j, double x, long long K = default_lattice_window) {
  if (j < 0) throw std::invalid_argument("moment order must be >= 0");
  detail::require_positive(x, "x");
  return lattice_sum(k, std::log(x), j, detail::weight_kind::signed_power, K);
}

inline double moment_m(const kernel& k, int j, double x, long long K = default_lattice_window) {
  return moment_m_detail(k, j, x, K).value;
}

/// M_alpha(phi, x) = sum_k |phi(e^{-k} x)| |k - log x|^alpha.
inline tail_sum moment_M_detail(const kernel& k, double alpha, double x, long long K = default_lattice_window) {
  detail::require_positive(alpha, "alpha");
  detail::require_positive(x, "x");
  if (k.abs_moment_divergent_from && alpha >= *k.abs_moment_divergent_from) {
    throw divergence_error("absolute moment M_" + std::to_string(alpha) + " of kernel '" + k.name() + "' is infinite");
  }
  return lattice_sum(k, std::log(x), alpha, detail::weight_kind::absolute_power, K);
}

inline double moment_M(const kernel& k, double alpha, double x, long long K = default_lattice_window) {
  return moment_M_detail(k, alpha, x, K).value;
}

/// sup_x M_alpha(phi, x) (alpha = 0 gives M_0), sampled over one period of log x
/// since every lattice sum is 1-periodic there. Includes the tail bound.
inline double sup_abs_moment(const kernel& k, double alpha, int samples = 256, long long K = default_lattice_window) {
  if (k.abs_moment_divergent_from && alpha >= *k.abs_moment_divergent_from) {
    throw divergence_error("absolute moment of kernel '" + k.name() + "' is infinite");
  }
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double u = static_cast<double>(i) / samples;
    const auto s = lattice_sum(k, u, alpha, detail::weight_kind::absolute_power, K);
    best = std::max(best, s.value + s.bound);
  }
  return best;
}

struct condition_report {
  double partition_max_dev = 0.0;
  double M0 = 0.0;
  std::vector<std::pair<double, double>> tail_profile;  // (r, sup tail)
  std::map<int, double> moment_x_variation;            // j -> max - min of m_j over the grid
  std::map<int, double> moment_mean;                   // j -> mean of m_j over the grid
};

/// For each radius r, the sup over the grid of
/// sum_{|k - log u| > r} |phi(e^{-k} u)| |k - log u|^power.
/// One common window serves all radii, so the profile is nonincreasing in r.
inline std::vector<std::pair<double, double>> decay_profile(const kernel& k, const std::vector<double>& radii,
                                                            const log_grid& grid, double power) {
  if (!std::is_sorted(radii.begin(), radii.end())) throw std::invalid_argument("decay_profile: radii must increase");
  if (grid.empty()) throw std::invalid_argument("decay_profile: empty grid");
  std::vector<std::pair<double, double>> out;
  if (radii.empty()) return out;
  const long long K = static_cast<long long>(std::ceil(radii.back())) + default_lattice_window;
  for (double r : radii) {
    double best = 0.0;
    for (double u : grid.points()) {
      const auto s = lattice_sum(k, u, power, detail::weight_kind::absolute_power, K, r);
      best = std::max(best, s.value + s.bound);
    }
    out.emplace_back(r, best);
  }
  return out;
}

/// Condition (i)/(ii) diagnostics over a grid; moments up to max_order whose
/// series converge are checked for x-independence.
inline condition_report make_condition_report(const kernel& k, const log_grid& grid, std::vector<double> radii,
                                              int max_order, long long K = default_lattice_window) {
  condition_report rep;
  rep.partition_max_dev = partition_check(k, grid, K);
  double m0 = 0.0;
  for (double u : grid.points()) {
    const auto s = lattice_sum(k, u, 0.0, detail::weight_kind::absolute_power, K);
    m0 = std::max(m0, s.value);
  }
  rep.M0 = m0;
  rep.tail_profile = decay_profile(k, radii, grid, 0.0);
  for (int j = 1; j <= max_order; ++j) {
    if (!k.compact() && k.decay && k.decay->exponent - j <= 1.0) break;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (double u : grid.points()) {
      const double m = lattice_sum(k, u, j, detail::weight_kind::signed_power, K).value;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      sum += m;
    }
    rep.moment_x_variation[j] = hi - lo;
    rep.moment_mean[j] = sum / static_cast<double>(grid.size());
  }
  return rep;
}

struct poisson_sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of sum_k phi(e^k x) = sum_m [phi]^_M(2 pi m i) x^{-2 pi m i}, the
/// right side truncated to |m| <= modes (real part; transforms here are even).
inline poisson_sides poisson_check(const kernel& k, double x, int modes, long long K = default_lattice_window) {
  if (!k.mellin_transform) throw unsupported_kernel_error("poisson_check: kernel has no Mellin transform metadata");
  if (modes < 0) throw std::invalid_argument("poisson_check: modes must be >= 0");
  detail::require_positive(x, "x");
  const double lx = std::log(x);
  poisson_sides out;
  out.lhs = lattice_sum(k, lx, 0.0, detail::weight_kind::signed_power, K).value;
  compensated_sum rhs;
  rhs.add(k.mellin_transform(0.0));
  for (int m = 1; m <= modes; ++m) {
    const double v = 2.0 * pi * m;
    rhs.add((k.mellin_transform(v) + k.mellin_transform(-v)) * cos_pi(2.0 * m * lx));
  }
  out.rhs = rhs.value();
  return out;
}

}  // namespace expsamp
