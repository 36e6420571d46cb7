// Reconstruct F(x) = sinc^2(log x / 2) / 2 from exponentially spaced samples.
#include <cmath>
#include <cstdio>

#include "expsamp/expsamp.hpp"

int main() {
  using namespace expsamp;
  const signal f = fejer_signal(pi);
  const double x = std::exp(2.7);

  std::printf("f(x)                    %.14f\n", f(x));
  std::printf("classical, N = 160      %.14f\n", classical_partial_sum(f, 0.0, 1.0, 160, x));

  const kernel hat = bspline_kernel(2);
  for (double w : {16.0, 512.0, 16384.0}) {
    std::printf("B2 series, w = %-8.0f %.14f\n", w, generalized_sample(hat, f, sampling_plan::compact_exact(w), x));
  }

  const kernel jackson = jackson_kernel(1.0, 2);
  for (double w : {20.0, 640.0}) {
    const auto plan = sampling_plan::tail_tol(w, 1e-15);
    std::printf("Jackson, w = %-10.0f %.14f\n", w, generalized_sample(jackson, f, plan, x));
  }

  const auto g = log_grid::uniform(-3.0, 3.0, 257);
  std::printf("Fejer kernel partition deviation %.3e\n", partition_check(fejer_kernel(1.0), g));
  std::printf("m_2 of J(1,2) at x = 1.3        %.12f\n", moment_m(jackson, 2, 1.3));
  return 0;
}
