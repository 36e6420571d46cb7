#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "errors.hpp"
#include "golden.hpp"
#include "kernels.hpp"
#include "report.hpp"
#include "sampling.hpp"
#include "tables.hpp"

namespace expsamp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_numeric = 70;

struct run_config {
  std::string command;
  std::optional<double> log_x;
  std::optional<std::string> norm_mode;  // paper | analytic
  std::string output = "text";
  std::optional<int> precision;
  bool check = false;
  std::string part = "both";
  std::string kernel = "b2";
  double rho = 1.0;
  double gamma = 1.0;
  int beta = 2;
  std::optional<int> order;
  std::string table = "1a";
  unsigned threads = 1;
  std::string b2_branch = "operator";
};

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct outcome {
  std::vector<report> reports;
  std::vector<std::string> failures;  // printed on stderr, exit 2 when non-empty
};

namespace detail {

inline output_format parse_format(const std::string& s) {
  if (s == "text") return output_format::text;
  if (s == "csv") return output_format::csv;
  if (s == "json") return output_format::json;
  throw usage_error("--output must be text, csv or json");
}

inline jackson_norm norm_for(const run_config& cfg, jackson_norm fallback) {
  if (!cfg.norm_mode) return fallback;
  return *cfg.norm_mode == "paper" ? jackson_norm::paper : jackson_norm::analytic;
}

inline std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string part_label(const golden::table& t) {
  switch (t.how) {
    case golden::method::classical: return "classical partial sums S_N";
    case golden::method::bspline2: return "B2 generalized sampling S_w";
    case golden::method::jackson: return "Jackson J(1,2) generalized sampling S_w, w = N";
  }
  return {};
}

inline outcome run_table(const run_config& cfg, int which) {
  const double default_logx = (which % 2 == 1) ? 2.7 : -0.6;
  const double log_x = cfg.log_x.value_or(default_logx);
  if (!std::isfinite(log_x)) throw usage_error("--logx must be finite");
  if (cfg.part != "a" && cfg.part != "b" && cfg.part != "both") throw usage_error("--part must be a, b or both");
  if (cfg.b2_branch != "operator" && cfg.b2_branch != "flipped-offset") {
    throw usage_error("--b2-branch must be operator or flipped-offset");
  }
  table_options opt;
  opt.log_x = log_x;
  opt.norm = norm_for(cfg, jackson_norm::paper);
  opt.branch = cfg.b2_branch == "operator" ? b2_branch::operator_sum : b2_branch::flipped_offset;
  opt.threads = cfg.threads;
  if (cfg.check) {
    if (log_x != default_logx) throw usage_error("--check compares against the published values at the default --logx");
    if (which >= 3 && opt.norm != jackson_norm::paper) {
      throw usage_error("--check compares against values computed with --norm-mode paper");
    }
  }
  outcome res;
  for (const char* p : {"a", "b"}) {
    if (cfg.part != "both" && cfg.part != p) continue;
    const std::string id = std::to_string(which) + p;
    const auto& t = golden::find(id);
    const int digits = cfg.precision.value_or(t.decimals);
    const auto vals = compute_table(t, opt);
    report rep;
    rep.title = "table " + id + ": " + part_label(t) + " of F(x) = sinc^2(log x / 2) / 2, log x = " + fmt("%g", log_x);
    if (t.how == golden::method::jackson) {
      rep.title += opt.norm == jackson_norm::paper ? ", published trapezoid constant" : ", exact constant 3/(8 pi)";
    }
    if (t.how == golden::method::bspline2 && opt.branch == b2_branch::flipped_offset) {
      rep.title += ", flipped-offset branch weights";
    }
    for (std::size_t i = 0; i < vals.params.size(); ++i) {
      rep.rows.push_back({cell::integer(vals.params[i]), cell::fixed(vals.values[i], digits),
                          cell::fixed(vals.reference, digits), cell::sci(std::abs(vals.values[i] - vals.reference))});
      if (cfg.check) {
        const double printed = std::strtod(t.rows[i].value, nullptr);
        const double diff = std::abs(vals.values[i] - printed);
        if (!(diff <= t.tolerance)) {
          char buf[256];
          std::snprintf(buf, sizeof buf, "check failed: table %s param %lld computed %.15f printed %s |diff| %.3e > %.1e",
                        id.c_str(), vals.params[i], vals.values[i], t.rows[i].value, diff, t.tolerance);
          res.failures.emplace_back(buf);
        }
      }
    }
    res.reports.push_back(std::move(rep));
  }
  return res;
}

inline kernel make_kernel(const run_config& cfg, jackson_norm norm) {
  const auto& k = cfg.kernel;
  if (k == "fejer") return fejer_kernel(cfg.rho);
  if (k == "jackson") return jackson_kernel(cfg.gamma, cfg.beta, 0.0, norm);
  if (k.size() >= 2 && k[0] == 'b') {
    const std::string digits = k.substr(1);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 2) {
      const int n = std::stoi(digits);
      if (n >= 1) return bspline_kernel(n);
    }
  }
  throw usage_error("--kernel must be b<n>, fejer or jackson");
}

inline int bspline_order(const run_config& cfg) {
  return cfg.kernel[0] == 'b' ? std::stoi(cfg.kernel.substr(1)) : 0;
}

inline outcome run_kernel_check(const run_config& cfg) {
  const auto k = make_kernel(cfg, norm_for(cfg, jackson_norm::analytic));
  const int order = cfg.order.value_or(2);
  if (order < 0) throw usage_error("--order must be >= 0");
  const int digits = cfg.precision.value_or(6);
  const auto grid = log_grid::standard();
  const std::vector<double> radii{1, 2, 4, 8, 16, 32, 64};
  outcome res;
  report rep;
  rep.title = "kernel-check " + k.name() + " on 4096 points, log x in [-6, 6]";
  auto row = [&](const std::string& name, cell value, cell ref = cell::none()) {
    cell err = cell::none();
    if (value.k == cell::kind::scientific && ref.k == cell::kind::scientific) err = cell::sci(std::abs(value.num - ref.num));
    rep.rows.push_back({cell::str(name), std::move(value), std::move(ref), std::move(err)});
  };

  const double part = partition_check(k, grid);
  const double part_tol = k.compact() ? 1e-15 : (k.name() == "fejer" ? 1e-8 : 1e-10);
  row("partition_max_dev", cell::sci(part, digits));
  if (part > part_tol) res.failures.push_back("partition deviation " + fmt("%.3e", part) + " exceeds " + fmt("%.0e", part_tol));

  double m0 = 0.0;
  for (double u : grid.points()) m0 = std::max(m0, lattice_sum(k, u, 0.0, expsamp::detail::weight_kind::absolute_power).value);
  row("M0", cell::sci(m0, digits));

  const int n_spline = bspline_order(cfg);
  for (int j = 1; j <= order; ++j) {
    const std::string name = "m_" + std::to_string(j);
    try {
      double lo = 1e300;
      double hi = -1e300;
      double sum = 0.0;
      for (double u : grid.points()) {
        const double m = lattice_sum(k, u, j, expsamp::detail::weight_kind::signed_power).value;
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        sum += m;
      }
      const double mean = sum / static_cast<double>(grid.size());
      const auto known = k.known_moments.find(j);
      row(name, cell::sci(mean, digits), known != k.known_moments.end() ? cell::sci(known->second, digits) : cell::none());
      row(name + "_x_variation", cell::sci(hi - lo, digits));
      if (known != k.known_moments.end() && std::abs(mean - known->second) > 1e-12) {
        res.failures.push_back(name + " = " + fmt("%.3e", mean) + " differs from " + fmt("%.3e", known->second));
      }
      const bool must_be_constant = (n_spline > 0 && j <= n_spline - 1) || (k.name() == "jackson" && j <= 2);
      const double var_tol = n_spline > 0 ? 1e-12 : 1e-9;
      if (must_be_constant && hi - lo > var_tol) {
        res.failures.push_back(name + " varies with x by " + fmt("%.3e", hi - lo));
      }
    } catch (const divergence_error&) {
      row(name, cell::str("divergent"));
    }
    const std::string abs_name = "M_" + std::to_string(j);
    try {
      row(abs_name, cell::sci(sup_abs_moment(k, j), digits));
    } catch (const divergence_error&) {
      row(abs_name, cell::str("divergent"));
    }
  }
  const auto profile = decay_profile(k, radii, grid, 0.0);
  for (const auto& [r, tail] : profile) row("sup_tail_r" + std::to_string(static_cast<int>(r)), cell::sci(tail, digits));
  res.reports.push_back(std::move(rep));
  return res;
}

inline outcome run_moments(const run_config& cfg) {
  const auto k = make_kernel(cfg, norm_for(cfg, jackson_norm::analytic));
  const int order = cfg.order.value_or(2);
  if (order < 0) throw usage_error("--order must be >= 0");
  const int digits = cfg.precision.value_or(13);
  const std::vector<double> points{-1.0, -0.5, 0.0, 0.3, 0.5, 1.0};
  outcome res;
  auto block = [&](const std::string& name, bool absolute, int j) {
    report rep;
    rep.title = name + "(" + k.name() + ", x) against log x";
    try {
      for (double t : points) {
        const double x = std::exp(t);
        const double v = absolute ? moment_M(k, j, x) : moment_m(k, j, x);
        cell ref = cell::none();
        cell err = cell::none();
        const auto known = k.known_moments.find(j);
        if (!absolute && known != k.known_moments.end()) {
          ref = cell::sci(known->second, digits);
          err = cell::sci(std::abs(v - known->second));
        }
        rep.rows.push_back({cell::fixed(t, 2), cell::sci(v, digits), ref, err});
      }
    } catch (const divergence_error& e) {
      rep.rows.clear();
      rep.rows.push_back({cell::str(name), cell::str("divergent"), cell::none(), cell::none()});
      rep.notes.emplace_back(e.what());
    }
    res.reports.push_back(std::move(rep));
  };
  for (int j = 0; j <= order; ++j) block("m_" + std::to_string(j), false, j);
  for (int j = 1; j <= order; ++j) block("M_" + std::to_string(j), true, j);
  return res;
}

/// Errors at or below this are rounding noise for a value near `ref`.
inline double noise_floor(double ref) { return 1024.0 * 2.220446049250313e-16 * std::abs(ref); }

inline outcome run_rates(const run_config& cfg) {
  const int digits = cfg.precision.value_or(13);
  const signal f = fejer_signal(pi);
  error_series series;
  std::string desc;
  const auto& id = cfg.table;
  if (id == "1a" || id == "2a" || id == "3a" || id == "4a" || id == "1b" || id == "2b") {
    const auto& t = golden::find(id);
    table_options opt;
    opt.log_x = t.log_x;
    opt.threads = cfg.threads;
    const auto vals = compute_table(t, opt);
    for (std::size_t i = 0; i < vals.params.size(); ++i) {
      if (std::abs(vals.values[i] - vals.reference) > noise_floor(vals.reference)) {
        series.add(static_cast<double>(vals.params[i]), vals.values[i], vals.reference);
      }
    }
    desc = "error against the closed form F(x), table " + id;
  } else if (id == "3b" || id == "4b") {
    const auto& t = golden::find(id);
    table_options opt;
    opt.log_x = t.log_x;
    opt.norm = norm_for(cfg, jackson_norm::paper);
    opt.threads = cfg.threads;
    const auto vals = compute_table(t, opt);
    const double limit = vals.values.back();
    for (std::size_t i = 0; i + 1 < vals.params.size(); ++i) {
      if (std::abs(vals.values[i] - limit) > noise_floor(limit)) {
        series.add(static_cast<double>(vals.params[i]), vals.values[i], limit);
      }
    }
    desc = "error against the largest-w row, table " + id;
  } else if (id == "jackson-tail") {
    const auto J = jackson_kernel(1.0, 2, 0.0, norm_for(cfg, jackson_norm::paper));
    const double w = 20.0;
    const double x = std::exp(2.7);
    for (long long N = 108; N <= 108 * 32; N *= 2) {
      const auto t = truncation_error(J, f, w, N, x);
      series.add(static_cast<double>(N), t.value, 0.0);
    }
    desc = "Jackson truncation tail |T_{w,N} f| at w = 20, log x = 2.7";
  } else {
    throw usage_error("--table must be 1a, 1b, 2a, 2b, 3a, 3b, 4a, 4b or jackson-tail");
  }
  outcome res;
  report rows;
  rows.title = "rates: " + desc;
  for (const auto& r : series.rows()) {
    rows.rows.push_back({cell::integer(static_cast<long long>(r.param)), cell::fixed(r.approx, digits),
                         cell::fixed(r.reference, digits), cell::sci(r.abs_err)});
  }
  res.reports.push_back(std::move(rows));
  const auto fit = fit_order(series);
  report fr;
  fr.title = "least-squares fit of log abs_err on log param";
  fr.rows.push_back({cell::str("slope"), cell::fixed(fit.slope, 6), cell::none(), cell::none()});
  fr.rows.push_back({cell::str("intercept"), cell::fixed(fit.intercept, 6), cell::none(), cell::none()});
  fr.rows.push_back({cell::str("r_squared"), cell::fixed(fit.r_squared, 6), cell::none(), cell::none()});
  fr.rows.push_back({cell::str("rows_used"), cell::integer(fit.rows_used), cell::none(), cell::none()});
  res.reports.push_back(std::move(fr));
  return res;
}

inline outcome run_voronovskaja(const run_config& cfg) {
  run_config c = cfg;
  if (c.kernel == "b2" && !cfg.order) c.order = 1;
  const auto k = make_kernel(c, norm_for(cfg, jackson_norm::analytic));
  const int n = c.order.value_or(2);
  const double log_x = cfg.log_x.value_or(2.7);
  if (!std::isfinite(log_x)) throw usage_error("--logx must be finite");
  const int digits = cfg.precision.value_or(10);
  const std::vector<double> ws{64, 128, 256, 512, 1024};
  const auto v = voronovskaja_limit(k, fejer_signal(pi), std::exp(log_x), n, ws);
  outcome res;
  report rep;
  rep.title = "voronovskaja: w^" + std::to_string(n) + " (S_w f - f)(x), kernel " + k.name() + ", log x = " +
              fmt("%g", log_x);
  for (std::size_t i = 0; i < v.w.size(); ++i) {
    rep.rows.push_back({cell::integer(static_cast<long long>(v.w[i])), cell::sci(v.sequence[i], digits),
                        v.target ? cell::sci(*v.target, digits) : cell::none(),
                        v.target ? cell::sci(std::abs(v.sequence[i] - *v.target)) : cell::none()});
  }
  rep.rows.push_back({cell::str("extrapolated"), cell::sci(v.extrapolated, digits),
                      v.target ? cell::sci(*v.target, digits) : cell::none(),
                      v.target ? cell::sci(std::abs(v.extrapolated - *v.target)) : cell::none()});
  if (v.target) {
    const double scale = *v.target != 0.0 ? std::abs(*v.target) : std::abs(v.sequence.front());
    if (std::abs(v.extrapolated - *v.target) > 0.05 * scale) {
      res.failures.push_back("extrapolated limit " + fmt("%.6e", v.extrapolated) + " misses target " +
                             fmt("%.6e", *v.target) + " by more than 5%");
    }
  } else {
    rep.notes.emplace_back("lower moments do not vanish; no closed-form target");
  }
  res.reports.push_back(std::move(rep));
  return res;
}

inline outcome dispatch(const run_config& cfg) {
  const auto& c = cfg.command;
  if (c == "table1") return run_table(cfg, 1);
  if (c == "table2") return run_table(cfg, 2);
  if (c == "table3") return run_table(cfg, 3);
  if (c == "table4") return run_table(cfg, 4);
  if (c == "kernel-check") return run_kernel_check(cfg);
  if (c == "moments") return run_moments(cfg);
  if (c == "rates") return run_rates(cfg);
  if (c == "voronovskaja") return run_voronovskaja(cfg);
  throw usage_error("unknown command '" + c + "'");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential sampling series: table reproduction and kernel diagnostics", "expsamp"};
  run_config cfg;
  std::string positional;
  std::string norm;
  int precision = 0;
  std::optional<double> logx;
  app.add_option("cmd", positional,
                 "table1 | table2 | table3 | table4 | kernel-check | moments | rates | voronovskaja");
  app.add_option("--command", cfg.command, "same as the positional command");
  app.add_option("--logx", logx, "log x at which to evaluate (tables: 2.7 or -0.6)");
  app.add_option("--norm-mode", norm, "Jackson constant: paper (published trapezoid) or analytic")
      ->check(CLI::IsMember({"paper", "analytic"}));
  app.add_option("--output", cfg.output, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--precision", precision, "printed decimals, 1..17")->check(CLI::Range(1, 17));
  app.add_flag("--check", cfg.check, "compare table rows with the published values; exit 2 on mismatch");
  app.add_option("--part", cfg.part, "a | b | both")->check(CLI::IsMember({"a", "b", "both"}));
  app.add_option("--kernel", cfg.kernel, "b<n> | fejer | jackson");
  app.add_option("--rho", cfg.rho, "Fejer kernel bandwidth");
  app.add_option("--gamma", cfg.gamma, "Jackson gamma >= 1");
  app.add_option("--beta", cfg.beta, "Jackson beta >= 1");
  app.add_option("--order", cfg.order, "moment or Voronovskaja order");
  app.add_option("--table", cfg.table, "rates: 1a..4b or jackson-tail");
  app.add_option("--threads", cfg.threads, "worker threads for table rows")->check(CLI::Range(1u, 256u));
  app.add_option("--b2-branch", cfg.b2_branch, "operator | flipped-offset")
      ->check(CLI::IsMember({"operator", "flipped-offset"}));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  if (!positional.empty() && !cfg.command.empty() && positional != cfg.command) {
    err << "error: positional command and --command disagree\n";
    return exit_usage;
  }
  if (cfg.command.empty()) cfg.command = positional;
  if (cfg.command.empty()) {
    err << "error: no command given\n" << app.help();
    return exit_usage;
  }
  if (!norm.empty()) cfg.norm_mode = norm;
  if (precision != 0) cfg.precision = precision;
  cfg.log_x = logx;

  outcome res;
  try {
    res = detail::dispatch(cfg);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << "\n";
    return exit_numeric;
  }
  out << render(res.reports, detail::parse_format(cfg.output));
  for (const auto& f : res.failures) err << f << "\n";
  return res.failures.empty() ? exit_ok : exit_check_failed;
}

}  // namespace expsamp::cli
