#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace conic {

// 17 significant digits: enough to round-trip any double exactly, so repeated
// runs with the same seed produce byte-identical reports.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// RFC-4180-style CSV with '.' decimals.  Lines starting with '#' carry run
// metadata (seed, n, workers) and are skipped by parse_csv.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_comment(const std::string& key, const std::string& value) { comments_.push_back(key + "=" + value); }

  void add_row(std::vector<std::string> cells);

  std::string str() const;

 private:
  static std::string escape(const std::string& cell);

  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace conic
