#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "infswitch/errors.hpp"

namespace infswitch {

/// Round-trip-exact decimal rendering; keeps CSV bodies byte-stable.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw ArgumentError("cannot open '" + path + "' for writing");
    write_cells(header);
  }

  void row(const std::vector<std::string>& cells) { write_cells(cells); }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
};

}  // namespace infswitch
