#pragma once

// CSV output: UTF-8, LF line endings, floats with 17 significant digits.

#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "mmfs/linalg.hpp"

namespace mmfs {

// %.17g; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

// "v1, v2, ..." with format_double
std::string join(const std::vector<double>& values);

class CsvWriter {
 public:
  // Opens `path` for writing (binary mode, so LF stays LF). Throws Error on failure.
  explicit CsvWriter(const std::string& path);

  void header(std::initializer_list<std::string_view> names);
  void header(const std::vector<std::string>& names);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double v);
  CsvWriter& field(std::size_t v);
  CsvWriter& field(bool v);
  void end_row();

 private:
  std::ofstream out_;
  bool first_in_row_ = true;
};

// One matrix row per line, comma separated.
void write_matrix_csv(const std::string& path, const DenseMatrix& m);

}  // namespace mmfs
