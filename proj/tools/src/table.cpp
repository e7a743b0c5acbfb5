#include "table.hpp"

#include <cstdio>
#include <stdexcept>

namespace qmir::cli {

std::string fmt_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  if (t.columns.empty()) throw std::invalid_argument("table has no columns");
  std::string out;
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) {
      throw std::invalid_argument("table row width differs from header");
    }
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += fmt_g12(row[c]);
    }
    out += '\n';
  }
  return out;
}

int column_index(const Table& t, const std::string& name) {
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace qmir::cli
