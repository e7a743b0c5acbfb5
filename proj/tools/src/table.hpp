#pragma once

#include <string>
#include <vector>

namespace qmir::cli {

// Rectangular numeric result set; one CSV file per command run.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// 12 significant digits, the CSV number format.
std::string fmt_g12(double v);

// Header plus rows, '\n' line endings, no trailing spaces. Byte-stable for
// identical input.
std::string to_csv(const Table& t);

// -1 when the column does not exist.
int column_index(const Table& t, const std::string& name);

}  // namespace qmir::cli
