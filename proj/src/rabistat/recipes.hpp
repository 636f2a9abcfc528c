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

// Named reproduction recipes, one plot-ready table per figure.

#include <string>
#include <string_view>
#include <vector>

#include "rabistat/table.hpp"

namespace rabistat {

struct RecipeOptions {
  int jobs = 1;
  int n_fock = 10;
};

std::vector<std::string> recipe_names();

// One-line description of the column layout.
std::string recipe_layout(std::string_view name);

// Throws invalid_spec for unknown names.
ResultTable run_recipe(std::string_view name, const RecipeOptions& options = {});

}  // namespace rabistat
