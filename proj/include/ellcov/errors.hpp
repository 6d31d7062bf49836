#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ellcov {

/// Two matrices whose shapes must agree do not.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::string what_context, std::ptrdiff_t rows1, std::ptrdiff_t cols1,
                    std::ptrdiff_t rows2, std::ptrdiff_t cols2);

  std::ptrdiff_t rows1() const { return rows1_; }
  std::ptrdiff_t cols1() const { return cols1_; }
  std::ptrdiff_t rows2() const { return rows2_; }
  std::ptrdiff_t cols2() const { return cols2_; }

 private:
  std::ptrdiff_t rows1_, cols1_, rows2_, cols2_;
};

/// A sample is too small for the requested estimator.
class InsufficientObservations : public std::invalid_argument {
 public:
  InsufficientObservations(const std::string& what, std::ptrdiff_t have, std::ptrdiff_t need)
      : std::invalid_argument(what + " (have " + std::to_string(have) + ", need " +
                              std::to_string(need) + ")"),
        have_(have),
        need_(need) {}

  std::ptrdiff_t have() const { return have_; }
  std::ptrdiff_t need() const { return need_; }

 private:
  std::ptrdiff_t have_, need_;
};

/// The plug-in null scale is not strictly positive, so the standardized statistic is undefined.
class DegenerateScale : public std::domain_error {
 public:
  explicit DegenerateScale(double value);
  double value() const { return value_; }

 private:
  double value_;
};

}  // namespace ellcov
