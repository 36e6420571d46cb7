#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kernels.hpp"
#include "signal.hpp"
#include "special_fn.hpp"
#include "summation.hpp"

namespace expsamp {

enum class window_kind { compact_exact, radius, tail_tol };

/// Rate, Mellin parameter, index window and accumulation for S_w^phi.
struct sampling_plan {
  double w = 1.0;
  double c = 0.0;
  window_kind window = window_kind::compact_exact;
  long long K = 0;    // half-width for window_kind::radius
  double eps = 0.0;   // tail tolerance for window_kind::tail_tol
  summation_mode summation = summation_mode::compensated;

  static sampling_plan compact_exact(double w, double c = 0.0) { return {w, c, window_kind::compact_exact, 0, 0.0}; }
  static sampling_plan radius(double w, long long K, double c = 0.0) { return {w, c, window_kind::radius, K, 0.0}; }
  static sampling_plan tail_tol(double w, double eps, double c = 0.0) { return {w, c, window_kind::tail_tol, 0, eps}; }

  void validate() const {
    detail::require_positive(w, "sampling_plan.w");
    detail::require_finite(c, "sampling_plan.c");
    if (window == window_kind::radius && K < 1) throw std::invalid_argument("sampling_plan: radius K must be >= 1");
    if (window == window_kind::tail_tol) detail::require_positive(eps, "sampling_plan.eps");
  }
};

struct error_row {
  double param = 0.0;
  double approx = 0.0;
  double reference = 0.0;
  double abs_err = 0.0;
};

class error_series {
 public:
  void add(double param, double approx, double reference) {
    rows_.push_back({param, approx, reference, std::abs(approx - reference)});
  }
  const std::vector<error_row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  std::vector<error_row> rows_;
};

struct sample_result {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the omitted part of the series
  long long k_lo = 0;
  long long k_hi = 0;
};

namespace detail {

inline long long nearest_index(double u) {
  if (!(std::abs(u) < 9.0e15)) throw std::invalid_argument("w log x too large for an index window");
  return static_cast<long long>(std::llround(u));
}

inline double sample_at(const signal& f, long long k, double w) {
  const double t = static_cast<double>(k) / w;
  const double v = f.at_log(t);
  if (!std::isfinite(v)) {
    throw invalid_sample_error("non-finite sample f(e^{k/w}) at log abscissa " + std::to_string(t), t);
  }
  return v;
}

/// Two-sided bound of sum_{|k - k0| > K} |phi(e^{u-k})| for a decaying kernel, u within 1/2 of k0.
inline double kernel_window_tail(const kernel& k, long long K) {
  return 2.0 * decay_tail_bound(*k.decay, 0.0, static_cast<double>(K) + 0.5);
}

inline long long window_for_tolerance(const kernel& k, double fmax, double eps) {
  long long K = 16;
  while (fmax * kernel_window_tail(k, K) > eps) {
    if (K > (1LL << 40)) throw convergence_error("no window meets the tail tolerance", 0.0, eps);
    K *= 2;
  }
  long long lo = K / 2;
  long long hi = K;
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (fmax * kernel_window_tail(k, mid) > eps) lo = mid; else hi = mid;
  }
  return hi;
}

}  // namespace detail

/// (S_w^phi f)(x) = sum_k f(e^{k/w}) phi(e^{-k} x^w) over the plan's window,
/// summed outward from k0 = round(w log x).
inline sample_result generalized_sample_detail(const kernel& k, const signal& f, const sampling_plan& plan, double x) {
  plan.validate();
  detail::require_positive(x, "x");
  const double u = plan.w * std::log(x);
  const long long k0 = detail::nearest_index(u);
  sample_result r;
  switch (plan.window) {
    case window_kind::compact_exact: {
      if (!k.compact()) throw unsupported_kernel_error("compact_exact window needs a compactly supported kernel");
      const double R = *k.support_log_radius;
      r.k_lo = static_cast<long long>(std::floor(u - R)) + 1;
      r.k_hi = static_cast<long long>(std::ceil(u + R)) - 1;
      break;
    }
    case window_kind::radius: {
      r.k_lo = k0 - plan.K;
      r.k_hi = k0 + plan.K;
      if (k.compact()) {
        r.tail_bound = (static_cast<double>(plan.K) + 0.5 >= *k.support_log_radius)
                           ? 0.0 : std::numeric_limits<double>::infinity();
      } else if (k.decay && f.bound) {
        r.tail_bound = *f.bound * detail::kernel_window_tail(k, plan.K);
      } else {
        r.tail_bound = std::numeric_limits<double>::infinity();
      }
      break;
    }
    case window_kind::tail_tol: {
      if (k.compact()) {
        const double R = *k.support_log_radius;
        r.k_lo = static_cast<long long>(std::floor(u - R)) + 1;
        r.k_hi = static_cast<long long>(std::ceil(u + R)) - 1;
        break;
      }
      if (!k.decay) throw unsupported_kernel_error("tail_tol window: kernel '" + k.name() + "' has no decay metadata");
      if (!f.bound) throw unsupported_kernel_error("tail_tol window: signal '" + f.name() + "' has no bound");
      const long long K = detail::window_for_tolerance(k, *f.bound, plan.eps);
      r.k_lo = k0 - K;
      r.k_hi = k0 + K;
      r.tail_bound = *f.bound * detail::kernel_window_tail(k, K);
      break;
    }
  }
  compensated_sum comp;
  double plain = 0.0;
  const bool use_comp = plan.summation == summation_mode::compensated;
  visit_outward(r.k_lo, r.k_hi, std::clamp(k0, r.k_lo, r.k_hi), [&](long long kk) {
    const double phi = k.at_log(u - static_cast<double>(kk));
    if (phi == 0.0) return;
    const double term = detail::sample_at(f, kk, plan.w) * phi;
    if (use_comp) comp.add(term); else plain += term;
  });
  r.value = use_comp ? comp.value() : plain;
  return r;
}

inline double generalized_sample(const kernel& k, const signal& f, const sampling_plan& plan, double x) {
  return generalized_sample_detail(k, f, plan, x).value;
}

/// S_N f(x) = sum_{|k| <= N} f(e^{k/T}) lin_{c/T}(e^{-k} x^T).
inline double classical_partial_sum(const signal& f, double c, double T, long long N, double x) {
  detail::require_positive(T, "T");
  detail::require_finite(c, "c");
  detail::require_positive(x, "x");
  if (N < 0) throw std::invalid_argument("classical_partial_sum: N must be >= 0");
  const double u = T * std::log(x);
  const long long k0 = std::clamp(detail::nearest_index(u), -N, N);
  compensated_sum acc;
  visit_outward(-N, N, k0, [&](long long k) {
    acc.add(detail::sample_at(f, k, T) * lin_log(u - static_cast<double>(k), c / T));
  });
  return acc.value();
}

/// Specialized S_N F^c_rho(x) with T = rho / pi:
/// (2 rho / pi^3 x^c) sum_{|k|<=N} sin^2(k pi / 2)/k^2 sinc((rho/pi) log x - k).
/// Even k != 0 drop out exactly; for odd k, sinc(u - k) = -sin(pi u) / (pi (u - k)),
/// so the shared factor sin(pi u) is computed once. k = 0 uses the limit pi^2/4.
inline double classical_fejer_sum(double rho, double c, long long N, double x) {
  detail::require_positive(rho, "rho");
  detail::require_finite(c, "c");
  detail::require_positive(x, "x");
  if (N < 0) throw std::invalid_argument("classical_fejer_sum: N must be >= 0");
  const double lx = std::log(x);
  const double u = rho / pi * lx;
  const double pref = 2.0 * rho / (pi * pi * pi) * std::exp(-c * lx);
  if (u == std::floor(u)) {
    if (std::abs(u) > static_cast<double>(N)) return 0.0;
    const auto m = static_cast<long long>(u);
    if (m == 0) return pref * pi * pi / 4.0;
    if (m % 2 == 0) return 0.0;
    return pref / (u * u);
  }
  const double s = sin_pi(u) / pi;
  compensated_sum acc;
  const long long k0 = std::clamp(detail::nearest_index(u), -N, N);
  visit_outward(-N, N, k0, [&](long long k) {
    if (k == 0) {
      acc.add(pi * pi / 4.0 * sinc(u));
    } else if (k % 2 != 0) {
      const double kd = static_cast<double>(k);
      acc.add(-s / (kd * kd * (u - kd)));
    }
  });
  return pref * acc.value();
}

namespace detail {

inline void require_fejer_pi(const signal& f, const char* who) {
  if (!f.fejer || f.fejer->rho != pi || f.fejer->c != 0.0) {
    throw std::invalid_argument(std::string(who) + " requires f = F^0_pi");
  }
}

/// sin^2(k pi / 2w) / k^2, with the k = 0 limit pi^2 / 4w^2.
inline double fejer_weight(long long k, double w) {
  if (k == 0) return pi * pi / (4.0 * w * w);
  const double s = sin_pi(static_cast<double>(k) / (2.0 * w));
  const double kd = static_cast<double>(k);
  return s * s / (kd * kd);
}

}  // namespace detail

/// Two-term closed form of S_w^{B_2} F^0_pi(x), selected by the position of x^w
/// relative to 1 and e^{+-1}. Exact knots w log x in Z go through generalized_sample.
inline double bspline2_closed_form(const signal& f, double w, double x) {
  detail::require_fejer_pi(f, "bspline2_closed_form");
  detail::require_positive(w, "w");
  detail::require_positive(x, "x");
  const double wl = w * std::log(x);
  if (wl == std::floor(wl)) return generalized_sample(bspline_kernel(2), f, sampling_plan::compact_exact(w), x);
  const double pref = 2.0 * w * w / (pi * pi);
  using detail::fejer_weight;
  if (wl > 1.0) {
    const auto j = static_cast<long long>(std::floor(wl));
    const double jd = static_cast<double>(j);
    return pref * (fejer_weight(j, w) * (1.0 - wl + jd) + fejer_weight(j + 1, w) * (wl - jd));
  }
  if (wl > 0.0) return pref * (fejer_weight(0, w) * (1.0 - wl) + fejer_weight(1, w) * wl);
  if (wl > -1.0) return pref * (fejer_weight(-1, w) * (-wl) + fejer_weight(0, w) * (1.0 + wl));
  const auto j = static_cast<long long>(std::floor(-wl));
  const double jd = static_cast<double>(j);
  return pref * (fejer_weight(-j - 1, w) * (-wl - jd) + fejer_weight(-j, w) * (1.0 + jd + wl));
}

/// Diagnostic variant of bspline2_closed_form: on x^w < e^{-1} the fractional
/// offset -w log x - j is replaced by w log x + j, giving the weights
/// (w log x + j, 1 - j - w log x). Reproduces a published column for log x < 0
/// that disagrees with the operator. Other branches are unchanged.
inline double bspline2_flipped_offset(const signal& f, double w, double x) {
  detail::require_fejer_pi(f, "bspline2_flipped_offset");
  detail::require_positive(w, "w");
  detail::require_positive(x, "x");
  const double wl = w * std::log(x);
  if (wl >= -1.0 || wl == std::floor(wl)) return bspline2_closed_form(f, w, x);
  const auto j = static_cast<long long>(std::floor(-wl));
  const double jd = static_cast<double>(j);
  const double pref = 2.0 * w * w / (pi * pi);
  return pref * (detail::fejer_weight(-j - 1, w) * (wl + jd) + detail::fejer_weight(-j, w) * (1.0 - jd - wl));
}

/// Window half-width for the specialized Jackson sum such that
/// (C/2) sum_{|k-k0|>K} sinc^4((w log x - k)/4 pi) < eps, using |sinc(d/4pi)| <= 4/|d|.
inline long long jackson_window(double C, double eps = 1e-16) {
  auto tail = [C](long long K) {
    const double a = static_cast<double>(K) + 0.5;
    return C * 256.0 * (std::pow(a, -4.0) + std::pow(a, -3.0) / 3.0);  // (C/2) * two sides
  };
  long long K = 64;
  while (tail(K) > eps) K *= 2;
  long long lo = K / 2;
  while (K - lo > 1) {
    const long long mid = lo + (K - lo) / 2;
    if (tail(mid) > eps) lo = mid; else K = mid;
  }
  return K;
}

/// (S_w^{J_{1,2}} F^0_pi)(x) = (C/2) sum_k sinc^2(k/2w) sinc^4((w log x - k)/4 pi),
/// C = d_{1,2} in the chosen normalization; K <= 0 picks the certified window.
inline sample_result jackson_sample_detail(const signal& f, double w, double x, jackson_norm mode, long long K = 0) {
  detail::require_fejer_pi(f, "jackson_sample");
  detail::require_positive(w, "w");
  detail::require_positive(x, "x");
  const double C = jackson_normalization(1.0, 2, mode == jackson_norm::paper ? norm_mode::paper_trapezoid
                                                                             : norm_mode::analytic_when_known);
  if (K <= 0) K = jackson_window(C);
  const double u = w * std::log(x);
  const long long k0 = detail::nearest_index(u);
  sample_result r;
  r.k_lo = k0 - K;
  r.k_hi = k0 + K;
  const double a = static_cast<double>(K) + 0.5;
  r.tail_bound = C * 256.0 * (std::pow(a, -4.0) + std::pow(a, -3.0) / 3.0);
  compensated_sum acc;
  visit_outward(r.k_lo, r.k_hi, k0, [&](long long k) {
    const double kd = static_cast<double>(k);
    const double s2 = sinc(kd / (2.0 * w));
    const double s4 = sinc((u - kd) / (4.0 * pi));
    const double s4sq = s4 * s4;
    acc.add(s2 * s2 * s4sq * s4sq);
  });
  r.value = 0.5 * C * acc.value();
  return r;
}

inline double jackson_sample(const signal& f, double w, double x, jackson_norm mode = jackson_norm::paper, long long K = 0) {
  return jackson_sample_detail(f, w, x, mode, K).value;
}

namespace detail {

/// sup_{|k| > M} |f(e^{k/w})| from the signal metadata.
inline double signal_sup_beyond(const signal& f, double w, double M) {
  double s = std::numeric_limits<double>::infinity();
  if (f.bound) s = *f.bound;
  if (f.decay && f.mellin_c == 0.0) s = std::min(s, f.decay->constant * std::pow(w / M, f.decay->exponent));
  return s;
}

inline constexpr long long truncation_index_cap = 1LL << 26;

}  // namespace detail

/// (T_{w,N} f)(x) = sum_{|k| >= N+1} f(e^{k/w}) phi(e^{-k} x^w). Compact kernels
/// are enumerated exactly. Otherwise the sum runs to an index M grown until the
/// certified remainder is below 1e-9 of the value (or M reaches 2^26 + N).
inline tail_sum truncation_error(const kernel& k, const signal& f, double w, long long N, double x) {
  detail::require_positive(w, "w");
  detail::require_positive(x, "x");
  if (N < 0) throw std::invalid_argument("truncation_error: N must be >= 0");
  const double u = w * std::log(x);
  compensated_sum acc;
  auto add = [&](long long kk) {
    const double phi = k.at_log(u - static_cast<double>(kk));
    if (phi != 0.0) acc.add(detail::sample_at(f, kk, w) * phi);
  };
  if (k.compact()) {
    const double R = *k.support_log_radius;
    const long long lo = static_cast<long long>(std::floor(u - R)) + 1;
    const long long hi = static_cast<long long>(std::ceil(u + R)) - 1;
    for (long long kk = lo; kk <= hi; ++kk) {
      if (kk > N || kk < -N) add(kk);
    }
    return {acc.value(), 0.0};
  }
  if (!k.decay) throw unsupported_kernel_error("truncation_error: kernel has no decay metadata");
  if (!f.bound && !f.decay) throw unsupported_kernel_error("truncation_error: signal has no bound or decay metadata");
  if (k.c() != 0.0) throw unsupported_kernel_error("truncation_error: non-compact kernels require c = 0");
  const double au = std::abs(u);
  long long M = std::max<long long>(8 * (N + 1), static_cast<long long>(std::ceil(2.0 * au)) + 1024);
  long long done = N;  // indices N+1..done already summed on both sides
  double bound = 0.0;
  while (true) {
    for (long long kk = done + 1; kk <= M; ++kk) {
      add(kk);
      add(-kk);
    }
    done = M;
    const double a = static_cast<double>(M) + 1.0 - au;
    bound = 2.0 * detail::signal_sup_beyond(f, w, static_cast<double>(M)) * detail::decay_tail_bound(*k.decay, 0.0, a);
    if (bound <= 1e-9 * std::abs(acc.value()) || M - N >= detail::truncation_index_cap) break;
    M = std::min(4 * M, N + detail::truncation_index_cap);
  }
  return {acc.value(), bound};
}

/// Tail of the classical series beyond |k| <= N, c = 0:
/// sum_{|k| >= N+1} f(e^{k/T}) sinc(T log x - k). Needs f.decay for the remainder bound.
inline tail_sum classical_truncation_error(const signal& f, double T, long long N, double x) {
  detail::require_positive(T, "T");
  detail::require_positive(x, "x");
  if (N < 0) throw std::invalid_argument("classical_truncation_error: N must be >= 0");
  if (!f.decay || f.mellin_c != 0.0) throw unsupported_kernel_error("classical_truncation_error needs f.decay with c = 0");
  const double u = T * std::log(x);
  const double au = std::abs(u);
  const double A = f.decay->constant;
  const double p = f.decay->exponent;
  compensated_sum acc;
  long long M = std::max<long long>(64 * (N + 1), static_cast<long long>(std::ceil(2.0 * au)) + 1024);
  long long done = N;
  double bound = 0.0;
  while (true) {
    for (long long k = done + 1; k <= M; ++k) {
      acc.add(detail::sample_at(f, k, T) * sinc(u - static_cast<double>(k)));
      acc.add(detail::sample_at(f, -k, T) * sinc(u + static_cast<double>(k)));
    }
    done = M;
    const double Md = static_cast<double>(M);
    // sum_{k>M} A (T/k)^p / (pi (k - |u|)), both sides.
    bound = 2.0 * A * std::pow(T, p) / (pi * (1.0 - au / Md)) * (std::pow(Md, -p - 1.0) + std::pow(Md, -p) / p);
    if (bound <= 1e-6 * std::abs(acc.value()) || M - N >= detail::truncation_index_cap) break;
    M = std::min(4 * M, N + detail::truncation_index_cap);
  }
  return {acc.value(), bound};
}

/// R_w f(x) = |f(x) - (S_w^phi f)(x)|.
inline double aliasing_error(const kernel& k, const signal& f, const sampling_plan& plan, double x) {
  return std::abs(f(x) - generalized_sample(k, f, plan, x));
}

}  // namespace expsamp
