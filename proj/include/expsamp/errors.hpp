#pragma once

#include <stdexcept>
#include <string>

namespace expsamp {

// Every library failure derives from std::runtime_error or std::invalid_argument
// so callers can catch coarsely; the CLI maps the classes onto exit codes.

class invalid_sample_error : public std::runtime_error {
 public:
  invalid_sample_error(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double last_estimate, double err_est)
      : std::runtime_error(what), last_estimate_(last_estimate), err_est_(err_est) {}
  double last_estimate() const noexcept { return last_estimate_; }
  double error_estimate() const noexcept { return err_est_; }

 private:
  double last_estimate_;
  double err_est_;
};

/// Kernel lacks the metadata (decay, transform, moment class) an operation needs.
class unsupported_kernel_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A moment or tail series that does not converge for the given kernel.
class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class insufficient_data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace expsamp
