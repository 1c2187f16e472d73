#pragma once

#include <cmath>

namespace volterra {

/// Neumaier-compensated running sum. The order of `add` calls fully
/// determines the result, so two accumulations over the same sequence are
/// bit-identical.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Positive root r-th root of a positive value via exp(log(v)/r).
inline double positive_root(double value, double r) { return std::exp(std::log(value) / r); }

}  // namespace volterra
