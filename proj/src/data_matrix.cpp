#include "ellcov/data_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ellcov {

DataMatrix::DataMatrix(RowMatrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw std::invalid_argument("DataMatrix needs at least one row and one column");
  }
  for (Index i = 0; i < values_.rows(); ++i) {
    for (Index j = 0; j < values_.cols(); ++j) {
      if (!std::isfinite(values_(i, j))) {
        throw std::invalid_argument("DataMatrix entry (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") is not finite");
      }
    }
  }
}

DataMatrix DataMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const Index n = static_cast<Index>(rows.size());
  const Index p = n > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  RowMatrix m(n, p);
  Index i = 0;
  for (const auto& r : rows) {
    if (static_cast<Index>(r.size()) != p) {
      throw std::invalid_argument("DataMatrix::from_rows: ragged rows");
    }
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return DataMatrix(std::move(m));
}

}  // namespace ellcov
