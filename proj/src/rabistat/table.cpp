// Copyright 2026 The rabistat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rabistat/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rabistat/error.hpp"

namespace rabistat {

namespace {

// Metadata values go on a single comment line.
std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

}  // namespace

void ResultTable::add_meta(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), one_line(std::move(value)));
}

void ResultTable::append(std::vector<double> row, std::string error) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::dimension_mismatch, "row has " + std::to_string(row.size()) + " values for " +
                                                   std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
  errors.push_back(std::move(error));
}

std::size_t ResultTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorCode::invalid_spec, "no column named '" + std::string(name) + "'");
}

std::vector<double> ResultTable::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorCode::io, "number formatting failed");
  return std::string(buf, end);
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  for (const auto& c : table.columns) out << c << ',';
  out << "error\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (const double v : table.rows[r]) out << format_double(v) << ',';
    out << table.errors[r] << '\n';
  }
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_csv(table, buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw Error(ErrorCode::io, "write to '" + path.string() + "' failed");
}

}  // namespace rabistat
