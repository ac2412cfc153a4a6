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
#include <vector>

// UTF-8 helpers shared by the tokenizer, the canonical model and ingest.
namespace incidentqa::text {

/// Decodes one code point starting at `pos`, advancing it. Invalid bytes
/// decode as U+FFFD and consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos) noexcept;

void append_utf8(std::string& out, char32_t cp);

/// Simple (one-to-one) lowercase mapping for ASCII, Latin-1, Latin Extended-A,
/// Greek and Cyrillic. Other code points map to themselves.
char32_t to_lower(char32_t cp) noexcept;

/// True for code points that form tokens: ASCII letters/digits and any
/// non-ASCII code point outside the space, punctuation and symbol blocks.
bool is_word_char(char32_t cp) noexcept;

std::string lowercase(std::string_view s);

std::string_view trim(std::string_view s) noexcept;

bool iequals_ascii(std::string_view a, std::string_view b) noexcept;

std::vector<std::string> split_lines(std::string_view s);

}  // namespace incidentqa::text
