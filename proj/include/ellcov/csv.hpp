#pragma once

#include "ellcov/data_matrix.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace ellcov::io {

using CsvRow = std::vector<std::string>;

/// RFC 4180 reader: quoted fields, doubled quotes, embedded separators and line breaks,
/// CRLF or LF records. A UTF-8 byte-order mark is skipped. Blank lines are ignored.
std::vector<CsvRow> read_csv(std::istream& in);

/// Quotes a field when it contains a separator, quote or line break.
std::string csv_escape(const std::string& field);

void write_csv_row(std::ostream& out, const CsvRow& row);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

/// Rows are observations, columns are variables. With has_header the first record is
/// skipped. Throws std::runtime_error naming the offending cell.
DataMatrix read_matrix_csv(std::istream& in, bool has_header);
DataMatrix read_matrix_csv(const std::string& path, bool has_header);

void write_matrix_csv(std::ostream& out, const DataMatrix& m,
                      const std::vector<std::string>& header = {});

}  // namespace ellcov::io
