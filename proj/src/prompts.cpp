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

#include "incidentqa/prompts.hpp"

namespace incidentqa::prompts {

namespace data {
extern const std::string_view classification_v1;
extern const std::string_view classification_reminder_v1;
extern const std::string_view extraction_v1;
extern const std::string_view extraction_reminder_v1;
extern const std::string_view qa_v1;
extern const std::string_view consolidation_v1;
}  // namespace data

std::string_view classification() noexcept { return data::classification_v1; }
std::string_view classification_reminder() noexcept { return data::classification_reminder_v1; }
std::string_view extraction() noexcept { return data::extraction_v1; }
std::string_view extraction_reminder() noexcept { return data::extraction_reminder_v1; }
std::string_view qa() noexcept { return data::qa_v1; }
std::string_view consolidation() noexcept { return data::consolidation_v1; }

std::string render(std::string_view tmpl,
                   const std::vector<std::pair<std::string_view, std::string_view>>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    out.append(tmpl, pos, open - pos);
    const auto name = tmpl.substr(open + 2, close - open - 2);
    bool replaced = false;
    for (const auto& [key, value] : vars) {
      if (key == name) {
        out.append(value);
        replaced = true;
        break;
      }
    }
    if (!replaced) out.append(tmpl, open, close + 2 - open);
    pos = close + 2;
  }
  out.append(tmpl, pos);
  return out;
}

}  // namespace incidentqa::prompts
