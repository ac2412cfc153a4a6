// Copyright 2026 The incidentqa Authors.
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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Prompt templates shipped under assets/prompts and compiled into the
// library. Placeholders are written {{name}}.
namespace incidentqa::prompts {

inline constexpr std::string_view kVersion = "v1";

std::string_view classification() noexcept;
std::string_view classification_reminder() noexcept;
std::string_view extraction() noexcept;
std::string_view extraction_reminder() noexcept;
std::string_view qa() noexcept;
std::string_view consolidation() noexcept;

/// Single pass substitution; substituted values are never re-scanned.
/// Unknown placeholders are left as written.
std::string render(std::string_view tmpl,
                   const std::vector<std::pair<std::string_view, std::string_view>>& vars);

}  // namespace incidentqa::prompts
