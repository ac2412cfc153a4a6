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

#include "incidentqa/tokenize.hpp"

#include "incidentqa/text.hpp"

namespace incidentqa {

std::vector<TokenSpan> tokenize_with_offsets(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t pos = 0;
  TokenSpan current;
  bool in_token = false;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = text::decode_utf8(text, pos);
    if (text::is_word_char(cp)) {
      if (!in_token) {
        current = TokenSpan{{}, start, start};
        in_token = true;
      }
      text::append_utf8(current.token, text::to_lower(cp));
      current.end = pos;
    } else if (in_token) {
      out.push_back(std::move(current));
      in_token = false;
    }
  }
  if (in_token) out.push_back(std::move(current));
  return out;
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  for (auto& span : tokenize_with_offsets(text)) tokens.push_back(std::move(span.token));
  return tokens;
}

}  // namespace incidentqa
