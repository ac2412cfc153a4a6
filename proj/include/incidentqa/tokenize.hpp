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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace incidentqa {

/// Lowercase tokens; never contains an empty token.
using TokenSeq = std::vector<std::string>;

inline constexpr std::string_view kTokenizerId = "incidentqa-unicode-v1";

/// A token and its byte range [begin, end) in the source text.
struct TokenSpan {
  std::string token;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Maximal runs of word characters (letters and digits), lowercased.
/// Whitespace and punctuation separate tokens and are dropped.
TokenSeq tokenize(std::string_view text);

std::vector<TokenSpan> tokenize_with_offsets(std::string_view text);

}  // namespace incidentqa
