#include "vibcorr/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vibcorr/errors.hpp"

namespace vibcorr {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_value(const std::string& cell, int line, int column) {
  if (cell == "nan") return std::nan("");
  if (cell == "inf") return INFINITY;
  if (cell == "-inf") return -INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + cell + "'", line, column);
  }
  if (used != cell.size()) throw ParseError("trailing characters in '" + cell + "'", line, column);
  return v;
}

}  // namespace

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw DimMismatch("row has " + std::to_string(row.size()) + " values, table has " +
                      std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

const std::string* ResultTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<double> ResultTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
  throw DimMismatch("no column named '" + name + "'");
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render_results(const ResultTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_value(row[c]);
    out << '\n';
  }
  return out.str();
}

void write_results(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << render_results(table);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

ResultTable parse_results(const std::string& text) {
  ResultTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.size() > 2 ? line.substr(2) : "";
      const auto colon = body.find(": ");
      if (colon == std::string::npos) throw ParseError("metadata line without 'key: value'", line_no, 1);
      table.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }
    if (!have_header) {
      table.columns = split_commas(line);
      have_header = true;
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() != table.columns.size()) throw ParseError("row width differs from header", line_no, 1);
    std::vector<double> row;
    int column = 1;
    for (const auto& cell : cells) {
      row.push_back(parse_value(cell, line_no, column));
      column += static_cast<int>(cell.size()) + 1;
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("missing header row", line_no + 1, 1);
  return table;
}

ResultTable read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_results(text.str());
}

}  // namespace vibcorr
