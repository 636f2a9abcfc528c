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

#pragma once

// Result tables and their CSV serialization.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rabistat {

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> errors;  // one per row, empty when the row is valid
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_meta(std::string key, std::string value);
  // Throws dimension_mismatch when the width differs from columns.
  void append(std::vector<double> row, std::string error = {});
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
};

// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

// '#'-prefixed metadata, header, rows; last column is "error".
void write_csv(const ResultTable& table, std::ostream& out);
// Throws io with the path on failure.
void write_csv(const ResultTable& table, const std::filesystem::path& path);

}  // namespace rabistat
