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

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace incidentqa {

enum class TransportMode { Aviation, Maritime, Rail, Road, Multimodal, None };

/// Label order used by the evaluation sampler and reports.
inline constexpr std::array<TransportMode, 6> kAllModes = {
    TransportMode::Aviation, TransportMode::Maritime, TransportMode::Multimodal,
    TransportMode::Rail,     TransportMode::Road,     TransportMode::None};

std::string_view mode_name(TransportMode mode) noexcept;

/// Case-insensitive exact label match. "None" and "null" both map to
/// TransportMode::None.
std::optional<TransportMode> parse_mode_label(std::string_view label);

struct ActorRef {
  std::string name;
  std::optional<std::string> country;
  std::optional<std::string> category;

  bool operator==(const ActorRef&) const = default;
};

/// Calendar date at year, month or day precision.
struct DateIso {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;

  bool operator==(const DateIso&) const = default;
  auto operator<=>(const DateIso&) const = default;

  /// "YYYY", "YYYY-MM" or "YYYY-MM-DD".
  std::string to_string() const;
  static std::optional<DateIso> from_string(std::string_view iso);
};

/// Best-effort parse of a free-form reported date ("May 2015", "2015-05-12",
/// "12 May 2015", "May 12, 2015", "05/12/2015", "12.05.2015", "2015").
std::optional<DateIso> parse_date_text(std::string_view text);

struct RecordKey {
  std::string source;
  std::string row_id;

  auto operator<=>(const RecordKey&) const = default;
  bool operator==(const RecordKey&) const = default;

  /// "source:row_id"
  std::string to_string() const;
  /// Splits at the first ':'; throws InvalidArgument when absent.
  static RecordKey parse(std::string_view text);
};

struct IncidentRecord {
  std::string attack_name;
  std::optional<std::string> incident_type;
  std::string description;
  std::optional<std::string> date;
  std::optional<DateIso> date_iso;
  std::optional<std::string> detection;
  std::optional<ActorRef> victim;
  std::optional<ActorRef> attacker;
  std::optional<std::string> motive;
  std::optional<std::string> database_entry_date;
  std::optional<std::string> reference;
  TransportMode transportation_mode = TransportMode::None;
  std::string source_dataset;
  std::string source_row_id;
  std::optional<std::string> duplicate_of;

  RecordKey key() const { return {source_dataset, source_row_id}; }

  bool operator==(const IncidentRecord&) const = default;
};

struct Violation {
  std::string field;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

/// Returns an empty list iff every record invariant holds.
std::vector<Violation> validate_record(const IncidentRecord& record);

/// Canonical document for one record: the schema field order followed by the
/// provenance fields, nulls explicit, two-space indentation.
std::string serialize_record(const IncidentRecord& record);

IncidentRecord parse_record(std::string_view document);

/// victim (or attack_name) | year | incident type, all lowercase.
std::string dedup_key(const IncidentRecord& record);

/// Records keyed by (source_dataset, source_row_id), iterated in key order.
/// Single writer until sealed; immutable afterwards.
class IncidentStore {
 public:
  using Map = std::map<RecordKey, IncidentRecord>;

  /// Throws KeyCollision on a repeated key, InvalidArgument once sealed.
  void insert(IncidentRecord record);

  void seal() noexcept { sealed_ = true; }
  bool sealed() const noexcept { return sealed_; }

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const IncidentRecord* find(const RecordKey& key) const;
  bool contains(const RecordKey& key) const { return records_.contains(key); }

  const Map& entries() const noexcept { return records_; }
  Map::const_iterator begin() const noexcept { return records_.begin(); }
  Map::const_iterator end() const noexcept { return records_.end(); }

  std::vector<IncidentRecord> records() const;

 private:
  Map records_;
  bool sealed_ = false;
};

/// Store file: a JSON array of canonical records in key order.
std::string serialize_store(const IncidentStore& store);
IncidentStore parse_store(std::string_view document);

IncidentStore load_store(const std::string& path);
void save_store(const IncidentStore& store, const std::string& path);

}  // namespace incidentqa
