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

#include "incidentqa/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <regex>
#include <set>
#include <variant>

#include "incidentqa/error.hpp"
#include "incidentqa/prompts.hpp"
#include "incidentqa/record_json.hpp"
#include "incidentqa/text.hpp"

namespace incidentqa {

namespace {

const std::set<std::string, std::less<>>& valid_targets() {
  static const std::set<std::string, std::less<>> kTargets = {
      "attack_name",     "incident_type",    "description",       "Date",
      "detection",       "victim.name",      "victim.country",    "victim.category",
      "attacker.name",   "attacker.country", "attacker.category", "Motive",
      "database_entry_date", "Reference",    "Transportation_mode"};
  return kTargets;
}

std::string row_number_id(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", n);
  return buf;
}

using Lookup = std::function<std::optional<std::string>(const std::string& column)>;

// Resolved value for every target, from mapped columns first, then defaults.
std::map<std::string, std::string> resolve_fields(const FieldMap& map, const Lookup& lookup) {
  std::map<std::string, std::string> values;
  for (const auto& [column, target] : map.columns) {
    if (values.contains(target)) continue;
    if (auto v = lookup(column)) {
      const auto trimmed = text::trim(*v);
      if (!trimmed.empty()) values[target] = std::string(trimmed);
    }
  }
  for (const auto& [target, value] : map.defaults) {
    if (!values.contains(target) && !value.empty()) values[target] = value;
  }
  return values;
}

std::optional<ActorRef> build_actor(const std::map<std::string, std::string>& values,
                                    const std::string& prefix) {
  const auto name = values.find(prefix + ".name");
  if (name == values.end()) return std::nullopt;
  ActorRef actor{name->second, std::nullopt, std::nullopt};
  if (auto it = values.find(prefix + ".country"); it != values.end()) actor.country = it->second;
  if (auto it = values.find(prefix + ".category"); it != values.end()) actor.category = it->second;
  return actor;
}

// Builds one record; returns the rejection reason instead on failure.
std::variant<IncidentRecord, std::string> build_record(const std::map<std::string, std::string>& values,
                                                       const std::string& source,
                                                       const std::string& row_id) {
  const auto get = [&](const char* target) -> std::optional<std::string> {
    const auto it = values.find(target);
    return it == values.end() ? std::nullopt : std::optional<std::string>(it->second);
  };
  IncidentRecord r;
  auto attack = get("attack_name");
  if (!attack) return std::string("missing_required_field: attack_name");
  auto description = get("description");
  if (!description) return std::string("missing_required_field: description");
  r.attack_name = *attack;
  r.description = *description;
  r.incident_type = get("incident_type");
  r.date = get("Date");
  if (r.date) r.date_iso = parse_date_text(*r.date);
  r.detection = get("detection");
  r.victim = build_actor(values, "victim");
  r.attacker = build_actor(values, "attacker");
  r.motive = get("Motive");
  r.database_entry_date = get("database_entry_date");
  r.reference = get("Reference");
  if (auto label = get("Transportation_mode")) {
    const auto mode = parse_mode_label(*label);
    if (!mode) return "invalid_transportation_mode: " + *label;
    r.transportation_mode = *mode;
  }
  r.source_dataset = source;
  r.source_row_id = row_id;
  if (const auto violations = validate_record(r); !violations.empty()) {
    return "invalid_record: " + violations.front().rule;
  }
  return r;
}

// Shared tail of the structured adapters: one attempt per row.
class Collector {
 public:
  explicit Collector(const std::string& source) { result_.report.source = source; }

  void add(std::size_t row, const std::map<std::string, std::string>& values,
           const std::string& row_id) {
    ++result_.report.rows_read;
    if (row_id.empty()) {
      reject(row, "missing_row_id");
      return;
    }
    if (!seen_ids_.insert(row_id).second) {
      reject(row, "duplicate_row_id: " + row_id);
      return;
    }
    auto built = build_record(values, result_.report.source, row_id);
    if (auto* reason = std::get_if<std::string>(&built)) {
      reject(row, *reason);
      return;
    }
    result_.records.push_back(std::move(std::get<IncidentRecord>(built)));
    ++result_.report.records_produced;
  }

  void reject(std::size_t row, std::string reason) {
    result_.report.rejected.push_back({row, std::move(reason)});
  }

  IngestResult take() { return std::move(result_); }

 private:
  IngestResult result_;
  std::set<std::string> seen_ids_;
};

// Pulls a JSON array out of a model reply, tolerating code fences and
// surrounding prose.
std::optional<nlohmann::json> parse_json_array(std::string_view reply) {
  const auto open = reply.find('[');
  const auto close = reply.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    return std::nullopt;
  }
  try {
    auto doc = nlohmann::json::parse(reply.substr(open, close - open + 1));
    if (doc.is_array()) return doc;
  } catch (const nlohmann::json::exception&) {
  }
  return std::nullopt;
}

}  // namespace

void FieldMap::validate() const {
  const auto covered = [&](std::string_view target) {
    if (defaults.contains(std::string(target))) return true;
    for (const auto& [column, t] : columns) {
      if (t == target) return true;
    }
    return false;
  };
  for (const auto& [column, target] : columns) {
    if (!valid_targets().contains(target)) {
      throw Error(ErrorCode::InvalidFieldMap, "unknown target field '" + target + "' for column '" + column + "'");
    }
  }
  for (const auto& [target, value] : defaults) {
    if (!valid_targets().contains(target)) {
      throw Error(ErrorCode::InvalidFieldMap, "unknown default target '" + target + "'");
    }
  }
  for (const char* required : {"attack_name", "description"}) {
    if (!covered(required)) {
      throw Error(ErrorCode::InvalidFieldMap, std::string("field map must map or default '") + required + "'");
    }
  }
}

FieldMap FieldMap::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidFieldMap, "field map must be a JSON object");
  FieldMap map;
  try {
    if (auto it = doc.find("columns"); it != doc.end()) {
      for (const auto& [column, target] : it->items()) {
        map.columns.emplace_back(column, target.get<std::string>());
      }
    }
    if (auto it = doc.find("defaults"); it != doc.end()) {
      for (const auto& [target, value] : it->items()) map.defaults[target] = value.get<std::string>();
    }
    if (auto it = doc.find("row_id"); it != doc.end() && !it->is_null()) {
      map.row_id_column = it->get<std::string>();
    }
    if (auto it = doc.find("separator"); it != doc.end()) {
      const auto sep = it->get<std::string>();
      if (sep == "\\t" || sep == "tab") {
        map.separator = '\t';
      } else if (sep.size() == 1) {
        map.separator = sep[0];
      } else {
        throw Error(ErrorCode::InvalidFieldMap, "separator must be a single character");
      }
    }
    if (auto it = doc.find("block_delimiter"); it != doc.end()) {
      map.block_delimiter = it->get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFieldMap, std::string("field map: ") + e.what());
  }
  map.validate();
  return map;
}

nlohmann::json IngestReport::to_json() const {
  nlohmann::json rejected_rows = nlohmann::json::array();
  for (const auto& r : rejected) rejected_rows.push_back({{"row", r.row}, {"reason", r.reason}});
  nlohmann::json dup = nlohmann::json::array();
  for (const auto& [later, earlier] : duplicates) dup.push_back({{"record", later}, {"duplicate_of", earlier}});
  return {{"source", source},
          {"rows_read", rows_read},
          {"records_produced", records_produced},
          {"records_rejected", rejected.size()},
          {"rejected", rejected_rows},
          {"duplicates", dup}};
}

IngestResult ingest_delimited(const std::vector<csv::Row>& rows, const FieldMap& map,
                              const std::string& source) {
  map.validate();
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "delimited input has no header row");

  std::map<std::string, std::size_t> header;
  for (std::size_t i = 0; i < rows.front().size(); ++i) {
    header.emplace(std::string(text::trim(rows.front()[i])), i);
  }
  for (const auto& [column, target] : map.columns) {
    if (!header.contains(column)) {
      throw Error(ErrorCode::HeaderMismatch, "field map names column '" + column + "' absent from the header");
    }
  }
  if (map.row_id_column && !header.contains(*map.row_id_column)) {
    throw Error(ErrorCode::HeaderMismatch, "row id column '" + *map.row_id_column + "' absent from the header");
  }

  Collector collector(source);
  std::size_t data_row = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const bool blank = std::all_of(row.begin(), row.end(),
                                   [](const std::string& cell) { return text::trim(cell).empty(); });
    if (blank) continue;
    ++data_row;
    const Lookup lookup = [&](const std::string& column) -> std::optional<std::string> {
      const std::size_t idx = header.at(column);
      return idx < row.size() ? std::optional<std::string>(row[idx]) : std::nullopt;
    };
    const std::string row_id = map.row_id_column
                                   ? std::string(text::trim(lookup(*map.row_id_column).value_or("")))
                                   : row_number_id(data_row);
    collector.add(data_row, resolve_fields(map, lookup), row_id);
  }
  return collector.take();
}

IngestResult ingest_text_records(std::string_view input, const std::string& delimiter_pattern,
                                 const FieldMap& map, const std::string& source) {
  map.validate();
  if (text::trim(input).empty()) throw Error(ErrorCode::EmptyInput, "structured text input is empty");

  std::regex delimiter;
  try {
    delimiter = std::regex(delimiter_pattern);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::InvalidFieldMap, "invalid block delimiter pattern: " + std::string(e.what()));
  }
  // Normalize line endings so patterns can be written with \n only.
  std::string normalized;
  normalized.reserve(input.size());
  for (const char c : input) {
    if (c != '\r') normalized.push_back(c);
  }

  Collector collector(source);
  std::size_t block_no = 0;
  std::sregex_token_iterator it(normalized.begin(), normalized.end(), delimiter, -1);
  for (; it != std::sregex_token_iterator(); ++it) {
    const std::string block = it->str();
    if (text::trim(block).empty()) continue;
    ++block_no;

    std::map<std::string, std::string> labeled;
    std::string last_label;
    for (const auto& line : text::split_lines(block)) {
      const auto trimmed = text::trim(line);
      if (trimmed.empty()) continue;
      const auto colon = trimmed.find(':');
      const bool continuation = line.front() == ' ' || line.front() == '\t' || colon == std::string_view::npos;
      if (continuation && !last_label.empty()) {
        labeled[last_label] += " " + std::string(trimmed);
        continue;
      }
      if (colon == std::string_view::npos) continue;
      last_label = std::string(text::trim(trimmed.substr(0, colon)));
      labeled[last_label] = std::string(text::trim(trimmed.substr(colon + 1)));
    }
    const Lookup lookup = [&](const std::string& column) -> std::optional<std::string> {
      const auto found = labeled.find(column);
      return found == labeled.end() ? std::nullopt : std::optional<std::string>(found->second);
    };
    const std::string row_id = map.row_id_column
                                   ? std::string(text::trim(lookup(*map.row_id_column).value_or("")))
                                   : row_number_id(block_no);
    collector.add(block_no, resolve_fields(map, lookup), row_id);
  }
  return collector.take();
}

std::string build_extraction_prompt(std::string_view free_text) {
  return prompts::render(prompts::extraction(), {{"text", free_text}});
}

IngestResult extract_records_llm(std::string_view free_text, GenerationProvider& provider,
                                 const std::string& source) {
  if (text::trim(free_text).empty()) throw Error(ErrorCode::EmptyInput, "extraction input is empty");

  const std::string prompt = build_extraction_prompt(free_text);
  auto documents = parse_json_array(provider.generate({prompt, 0.0, GenerationPurpose::Extraction}));
  if (!documents) {
    documents = parse_json_array(provider.generate(
        {prompt + std::string(prompts::extraction_reminder()), 0.0, GenerationPurpose::Extraction}));
  }
  if (!documents) {
    throw Error(ErrorCode::UnparseableProviderOutput,
                "provider output was not a JSON array of records after one re-ask");
  }

  IngestResult result;
  result.report.source = source;
  std::size_t n = 0;
  for (auto& doc : *documents) {
    ++n;
    ++result.report.rows_read;
    if (!doc.is_object()) {
      result.report.rejected.push_back({n, "malformed_document: element is not an object"});
      continue;
    }
    doc["source_dataset"] = source;
    doc["source_row_id"] = row_number_id(n);
    try {
      IncidentRecord record = record_from_json(doc);
      if (const auto violations = validate_record(record); !violations.empty()) {
        result.report.rejected.push_back({n, "invalid_record: " + violations.front().rule});
        continue;
      }
      result.records.push_back(std::move(record));
      ++result.report.records_produced;
    } catch (const Error& e) {
      result.report.rejected.push_back(
          {n, std::string(error_code_name(e.code())) + ": " + e.what()});
    }
  }
  return result;
}

MergeResult merge_sources(const std::vector<std::vector<IncidentRecord>>& batches) {
  MergeResult out;
  out.report.source = "merged";
  // dedup key -> (earliest key, its source)
  std::map<std::string, RecordKey> first_seen;
  for (const auto& batch : batches) {
    for (IncidentRecord record : batch) {
      ++out.report.rows_read;
      const std::string dkey = dedup_key(record);
      const auto [it, inserted] = first_seen.emplace(dkey, record.key());
      if (!inserted && it->second.source != record.source_dataset) {
        record.duplicate_of = it->second.to_string();
        out.report.duplicates.emplace_back(record.key().to_string(), it->second.to_string());
      }
      out.store.insert(std::move(record));
      ++out.report.records_produced;
    }
  }
  out.store.seal();
  return out;
}

}  // namespace incidentqa
