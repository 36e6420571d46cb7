#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace expsamp {

/// Neumaier's variant of Kahan summation. Order-dependent but deterministic.
class compensated_sum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  compensated_sum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Recursive pairwise summation over the span in index order.
inline double pairwise_sum(std::span<const double> xs) noexcept {
  constexpr std::size_t block = 16;
  if (xs.size() <= block) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

enum class summation_mode { pairwise_outward, compensated };

/// Accumulator honouring a summation_mode; the caller supplies the order.
class mode_sum {
 public:
  explicit mode_sum(summation_mode mode) : mode_(mode) {}
  void add(double x) noexcept {
    if (mode_ == summation_mode::compensated) {
      comp_.add(x);
    } else {
      plain_ += x;
    }
  }
  double value() const noexcept {
    return mode_ == summation_mode::compensated ? comp_.value() : plain_;
  }

 private:
  summation_mode mode_;
  compensated_sum comp_;
  double plain_ = 0.0;
};

/// Visits the integers of [lo, hi] starting at `center` (clamped into the
/// range) and moving outward: center, center+1, center-1, center+2, ...
template <typename Visitor>
void visit_outward(long long lo, long long hi, long long center, Visitor&& visit) {
  if (lo > hi) return;
  if (center < lo) center = lo;
  if (center > hi) center = hi;
  visit(center);
  for (long long step = 1;; ++step) {
    const bool up = center + step <= hi;
    const bool down = center - step >= lo;
    if (!up && !down) break;
    if (up) visit(center + step);
    if (down) visit(center - step);
  }
}

}  // namespace expsamp
