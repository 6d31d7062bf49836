#include "ellcov/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ellcov::io {

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes an empty record from a record with one empty field
  bool at_start = true;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    const bool blank = row.empty() && field.empty() && !field_started;
    if (!blank) {
      end_field();
      rows.push_back(std::move(row));
    }
    row.clear();
    field.clear();
    field_started = false;
  };

  char ch;
  while (in.get(ch)) {
    if (at_start) {
      at_start = false;
      if (static_cast<unsigned char>(ch) == 0xEF) {
        char b1 = 0, b2 = 0;
        if (in.get(b1) && in.get(b2) && static_cast<unsigned char>(b1) == 0xBB &&
            static_cast<unsigned char>(b2) == 0xBF) {
          continue;
        }
        throw std::runtime_error("CSV: malformed byte-order mark");
      }
    }
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        if (in.peek() == '\n') in.get(ch);
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) throw std::runtime_error("CSV: unterminated quoted field");
  end_record();
  return rows;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(row[i]);
  }
  out << '\n';
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

namespace {
double parse_cell(const std::string& text, std::size_t row, std::size_t col) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  double v = 0.0;
  if (b != std::string::npos) {
    const char* first = text.data() + b;
    const char* last = text.data() + e + 1;
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && ptr == last && std::isfinite(v)) return v;
  }
  throw std::runtime_error("matrix CSV: non-numeric cell at row " + std::to_string(row + 1) +
                           ", column " + std::to_string(col + 1) + " ('" + text + "')");
}
}  // namespace

DataMatrix read_matrix_csv(std::istream& in, bool has_header) {
  const std::vector<CsvRow> rows = read_csv(in);
  const std::size_t first = has_header ? 1 : 0;
  if (rows.size() <= first) throw std::runtime_error("matrix CSV: no data rows");
  const std::size_t p = rows[first].size();
  RowMatrix m(static_cast<Index>(rows.size() - first), static_cast<Index>(p));
  for (std::size_t i = first; i < rows.size(); ++i) {
    if (rows[i].size() != p) {
      throw std::runtime_error("matrix CSV: row " + std::to_string(i + 1) + " has " +
                               std::to_string(rows[i].size()) + " columns, expected " +
                               std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) {
      m(static_cast<Index>(i - first), static_cast<Index>(j)) = parse_cell(rows[i][j], i, j);
    }
  }
  return DataMatrix(std::move(m));
}

DataMatrix read_matrix_csv(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_matrix_csv(in, has_header);
}

void write_matrix_csv(std::ostream& out, const DataMatrix& m,
                      const std::vector<std::string>& header) {
  if (!header.empty()) write_csv_row(out, header);
  for (Index i = 0; i < m.rows(); ++i) {
    CsvRow row;
    row.reserve(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) row.push_back(format_double(m.values()(i, j)));
    write_csv_row(out, row);
  }
}

}  // namespace ellcov::io
