#include "ellcov/errors.hpp"

#include <sstream>

namespace ellcov {

namespace {
std::string shape_message(const std::string& context, std::ptrdiff_t r1, std::ptrdiff_t c1,
                          std::ptrdiff_t r2, std::ptrdiff_t c2) {
  std::ostringstream os;
  os << context << ": dimension mismatch between " << r1 << "x" << c1 << " and " << r2 << "x"
     << c2;
  return os.str();
}
}  // namespace

DimensionMismatch::DimensionMismatch(std::string context, std::ptrdiff_t rows1,
                                     std::ptrdiff_t cols1, std::ptrdiff_t rows2,
                                     std::ptrdiff_t cols2)
    : std::invalid_argument(shape_message(context, rows1, cols1, rows2, cols2)),
      rows1_(rows1),
      cols1_(cols1),
      rows2_(rows2),
      cols2_(cols2) {}

DegenerateScale::DegenerateScale(double value)
    : std::domain_error("degenerate null-scale estimate (sigma_hat = " + std::to_string(value) +
                        ")"),
      value_(value) {}

}  // namespace ellcov
