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

// Plain-text configuration: `key = value` lines grouped under `[section]`
// headers, '#' or ';' comments. Keys are stored as "section.key".

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rabistat {

class Config {
 public:
  // Throws invalid_spec naming the offending line.
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  // "section.key=value" or "key=value".
  void set(std::string_view assignment);
  void set(std::string key, std::string value);

  bool has(std::string_view key) const { return entries_.count(std::string(key)) != 0; }
  std::optional<std::string> get(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<int> get_int(std::string_view key) const;
  // Comma or whitespace separated.
  std::vector<std::string> get_list(std::string_view key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

double parse_double(std::string_view text, std::string_view what);
int parse_int(std::string_view text, std::string_view what);
std::vector<std::string> split_list(std::string_view text);

}  // namespace rabistat
