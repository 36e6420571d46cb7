#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "golden.hpp"
#include "kernels.hpp"
#include "sampling.hpp"
#include "signal.hpp"

namespace expsamp {

/// How the B_2 rows are evaluated: the operator itself, or the flipped-offset
/// variant that reproduces the published log x < 0 column.
enum class b2_branch { operator_sum, flipped_offset };

struct table_options {
  double log_x = 0.0;
  jackson_norm norm = jackson_norm::paper;
  b2_branch branch = b2_branch::operator_sum;
  unsigned threads = 1;
};

struct table_values {
  std::vector<long long> params;
  std::vector<double> values;
  double reference = 0.0;  // F^0_pi(x) in closed form
};

inline double table_entry(golden::method how, long long param, double log_x, const table_options& opt) {
  static const signal f = fejer_signal(pi);
  const double x = std::exp(log_x);
  const auto p = static_cast<double>(param);
  switch (how) {
    case golden::method::classical: return classical_fejer_sum(pi, 0.0, param, x);
    case golden::method::bspline2:
      if (opt.branch == b2_branch::flipped_offset) return bspline2_flipped_offset(f, p, x);
      return generalized_sample(bspline_kernel(2), f, sampling_plan::compact_exact(p), x);
    case golden::method::jackson: return jackson_sample(f, p, x, opt.norm);
  }
  return 0.0;
}

/// Evaluates every row of a table. Rows may run concurrently; each row is a
/// fixed-order sum, so the result does not depend on `threads`.
inline table_values compute_table(const golden::table& t, const table_options& opt) {
  table_values out;
  for (const auto& r : t.rows) out.params.push_back(r.param);
  out.values.assign(out.params.size(), 0.0);
  out.reference = fejer_signal(pi).at_log(opt.log_x);
  const unsigned threads = std::max(1u, opt.threads);
  const std::size_t n = out.params.size();
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out.values[i] = table_entry(t.how, out.params[i], opt.log_x, opt);
    return out;
  }
  for (std::size_t start = 0; start < n; start += threads) {
    std::vector<std::future<double>> jobs;
    for (std::size_t i = start; i < std::min(n, start + threads); ++i) {
      jobs.push_back(std::async(std::launch::async, [&, i] { return table_entry(t.how, out.params[i], opt.log_x, opt); }));
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) out.values[start + j] = jobs[j].get();
  }
  return out;
}

}  // namespace expsamp
