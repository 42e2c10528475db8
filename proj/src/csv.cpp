#include "mmfs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "mmfs/error.hpp"

namespace mmfs {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += format_double(values[i]);
  }
  return s;
}

namespace {

const std::string& with_parent_dirs(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  return path;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path)
    : out_(with_parent_dirs(path), std::ios::binary | std::ios::trunc) {
  if (!out_) throw Error("cannot open '" + path + "' for writing");
}

void CsvWriter::header(std::initializer_list<std::string_view> names) {
  for (auto n : names) field(n);
  end_row();
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& n : names) field(std::string_view(n));
  end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (!first_in_row_) out_ << ',';
  out_ << text;
  first_in_row_ = false;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(std::string_view(format_double(v))); }

CsvWriter& CsvWriter::field(std::size_t v) { return field(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::field(bool v) { return field(std::string_view(v ? "1" : "0")); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_in_row_ = true;
}

void write_matrix_csv(const std::string& path, const DenseMatrix& m) {
  CsvWriter w(path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double v : m.row(i)) w.field(v);
    w.end_row();
  }
}

}  // namespace mmfs
