#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vibcorr {

inline constexpr const char* kVersion = "0.3.1";
// Metadata key whose line carries the timestamp and wall time; the only line
// allowed to differ between identical runs.
inline constexpr const char* kRunStampKey = "run";

/// Rectangular table of reals plus ordered key/value metadata.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row);  // throws DimMismatch on width mismatch
  void set_meta(const std::string& key, const std::string& value);
  const std::string* meta(const std::string& key) const;
  std::vector<double> column(const std::string& name) const;
};

// "%.12g"; non-finite values become nan / inf / -inf.
std::string format_value(double v);

/// CSV with '#'-prefixed "key: value" metadata lines, then the header row,
/// then one line per row. Throws IoError.
void write_results(const ResultTable& table, const std::string& path);
std::string render_results(const ResultTable& table);

// Inverse of write_results. Throws IoError / ParseError.
ResultTable read_results(const std::string& path);
ResultTable parse_results(const std::string& text);

}  // namespace vibcorr
