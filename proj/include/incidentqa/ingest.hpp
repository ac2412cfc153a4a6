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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "incidentqa/csv.hpp"
#include "incidentqa/incident.hpp"
#include "incidentqa/providers.hpp"

namespace incidentqa {

/// Routes source columns (or "label: value" labels) to record fields.
///
/// Targets use the canonical document names, with dotted paths for actor
/// sub-fields: attack_name, incident_type, description, Date, detection,
/// victim.name, victim.country, victim.category, attacker.name,
/// attacker.country, attacker.category, Motive, database_entry_date,
/// Reference, Transportation_mode.
struct FieldMap {
  /// (source column, target field), in declaration order.
  std::vector<std::pair<std::string, std::string>> columns;
  /// Constant values for targets the source does not supply.
  std::map<std::string, std::string> defaults;
  /// Column holding a stable row identifier; row position is used otherwise.
  std::optional<std::string> row_id_column;
  char separator = ',';
  /// ECMAScript regex separating incident blocks in structured text.
  std::string block_delimiter = R"(\n[ \t]*\n)";

  /// Throws InvalidFieldMap for unknown targets or when attack_name or
  /// description is neither mapped nor defaulted.
  void validate() const;

  /// {"columns": {...}, "defaults": {...}, "row_id": "...", "separator": ",",
  ///  "block_delimiter": "..."}
  static FieldMap from_json(const nlohmann::json& doc);
};

struct RejectedRow {
  /// 1-based data row (or block) number within the source.
  std::size_t row = 0;
  std::string reason;
};

struct IngestReport {
  std::string source;
  std::size_t rows_read = 0;
  std::size_t records_produced = 0;
  std::vector<RejectedRow> rejected;
  /// (later record key, earlier record key)
  std::vector<std::pair<std::string, std::string>> duplicates;

  nlohmann::json to_json() const;
};

struct IngestResult {
  std::vector<IncidentRecord> records;
  IngestReport report;
};

/// First row is the header. Throws HeaderMismatch when the map names a
/// column absent from the header, EmptyInput for an empty table.
IngestResult ingest_delimited(const std::vector<csv::Row>& rows, const FieldMap& map,
                              const std::string& source);

/// Splits `text` into blocks at `delimiter_pattern` and reads "label: value"
/// lines; lines without a label continue the previous value. Throws
/// EmptyInput for blank text.
IngestResult ingest_text_records(std::string_view text, const std::string& delimiter_pattern,
                                 const FieldMap& map, const std::string& source);

/// Asks the provider for an array of canonical documents. One re-ask with a
/// format reminder, then UnparseableProviderOutput.
IngestResult extract_records_llm(std::string_view free_text, GenerationProvider& provider,
                                 const std::string& source);

/// Builds the extraction prompt for `free_text`.
std::string build_extraction_prompt(std::string_view free_text);

struct MergeResult {
  IncidentStore store;
  IngestReport report;
};

/// Inserts every record (KeyCollision on a repeated source key) and flags
/// cross-source dedup-key collisions: each later record's duplicate_of is
/// the earliest record's key. The returned store is sealed.
MergeResult merge_sources(const std::vector<std::vector<IncidentRecord>>& batches);

}  // namespace incidentqa
