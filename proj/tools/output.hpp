#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace airyspec::cli {

enum class Format { csv, json };

// A command's result: numeric rows under named columns, plus the parameters
// that produced them.  `json_rows` replaces the row objects in JSON output
// when set (beam output is nested per xi).
struct Table {
  nlohmann::json params = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json json_rows;
};

// 17 significant digits; non-finite values as inf/-inf/nan.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

// Writes to `path`, or stdout for "" or "-".  Throws std::runtime_error on I/O failure.
void write_table(const Table& t, const std::string& path, Format f);

// Parses CSV written by write_csv back into a table (params left empty).
Table read_csv(std::istream& is);

}  // namespace airyspec::cli
