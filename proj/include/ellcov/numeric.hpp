#pragma once

#include <cmath>
#include <cstddef>

namespace ellcov {

/// Neumaier-compensated running sum. Deterministic for a fixed order of add() calls.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Inner product in a fixed order: four interleaved lanes combined pairwise, then the tail.
inline double fixed_order_dot(const double* a, const double* b, std::ptrdiff_t len) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::ptrdiff_t k = 0;
  for (; k + 4 <= len; k += 4) {
    l0 += a[k] * b[k];
    l1 += a[k + 1] * b[k + 1];
    l2 += a[k + 2] * b[k + 2];
    l3 += a[k + 3] * b[k + 3];
  }
  double tail = 0.0;
  for (; k < len; ++k) tail += a[k] * b[k];
  return ((l0 + l1) + (l2 + l3)) + tail;
}

/// n (n-1) ... (n-m+1); zero when m > n.
inline double falling_factorial(std::ptrdiff_t n, int m) {
  double out = 1.0;
  for (int i = 0; i < m; ++i) out *= static_cast<double>(n - i);
  return out;
}

}  // namespace ellcov
