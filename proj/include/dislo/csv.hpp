#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "dislo/errors.hpp"

namespace dislo {

/// Formats a double with 17 significant digits: lossless, diff-able and
/// identical across reruns.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Minimal CSV writer with a fixed float format.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::initializer_list<std::string> header)
      : out_(path, std::ios::binary) {
    if (!out_) {
      throw ValidationError("cannot open output file " + path);
    }
    bool first = true;
    for (const std::string& h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << format_double(v);
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace dislo
