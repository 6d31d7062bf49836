#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <span>

namespace ellcov {

using Index = Eigen::Index;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// An n x p sample; each row is one observation. Entries are finite and p >= 1.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(RowMatrix values);

  static DataMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  bool empty() const { return values_.size() == 0; }

  const RowMatrix& values() const { return values_; }

  std::span<const double> row(Index i) const {
    return {values_.data() + i * values_.cols(), static_cast<std::size_t>(values_.cols())};
  }

  friend bool operator==(const DataMatrix& a, const DataMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           a.values_ == b.values_;
  }

 private:
  RowMatrix values_;
};

}  // namespace ellcov
