#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace airyspec::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::json doc;
  doc["params"] = t.params;
  if (!t.json_rows.is_null()) {
    doc["rows"] = t.json_rows;
  } else {
    auto rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      nlohmann::json r = nlohmann::json::object();
      // JSON has no infinities; those fields become null.
      for (size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = std::isfinite(row[i]) ? nlohmann::json(row[i]) : nlohmann::json();
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
  }
  os << doc.dump(1) << '\n';
}

void write_table(const Table& t, const std::string& path, Format f) {
  auto emit = [&](std::ostream& os) { f == Format::json ? write_json(os, t) : write_csv(os, t); };
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit(out);
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) return t;
  std::stringstream hs(line);
  for (std::string col; std::getline(hs, col, ',');) t.columns.push_back(col);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::strtod(cell.c_str(), nullptr));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace airyspec::cli
