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

namespace incidentqa::csv {

using Row = std::vector<std::string>;

/// RFC 4180 style: fields may be quoted with '"', quotes doubled inside,
/// quoted fields may span lines. CRLF and LF both end a record. A trailing
/// empty line is not a record. Throws MalformedDocument on an unterminated
/// quote.
std::vector<Row> parse(std::string_view text, char separator = ',');

/// Quotes a field only when it contains the separator, a quote or a line
/// break.
std::string escape(std::string_view field, char separator = ',');

std::string format_row(const Row& row, char separator = ',');

}  // namespace incidentqa::csv
