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

#include "incidentqa/incident.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <regex>
#include <set>

#include "incidentqa/error.hpp"
#include "incidentqa/io.hpp"
#include "incidentqa/record_json.hpp"
#include "incidentqa/text.hpp"

namespace incidentqa {

namespace {

constexpr std::array<std::string_view, 6> kModeNames = {"Aviation", "Maritime", "Rail",
                                                        "Road",     "Multimodal", "None"};

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return (month == 2 && is_leap(year)) ? 29 : kDays[month - 1];
}

std::optional<DateIso> make_date(int year, std::optional<int> month, std::optional<int> day) {
  if (year < 1000 || year > 2999) return std::nullopt;
  if (month && (*month < 1 || *month > 12)) return std::nullopt;
  if (day && (!month || *day < 1 || *day > days_in_month(year, *month))) return std::nullopt;
  return DateIso{year, month, day};
}

std::optional<int> month_from_name(std::string_view name) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  if (name == "sept") return 9;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (name == kMonths[i] || (name.size() == 3 && kMonths[i].substr(0, 3) == name)) {
      return static_cast<int>(i) + 1;
    }
  }
  return std::nullopt;
}

// Fields allowed in a canonical document.
const std::set<std::string, std::less<>>& allowed_fields() {
  static const std::set<std::string, std::less<>> kFields = {
      "attack_name", "incident_type", "description",   "Date",          "detection",
      "victim",      "attacker",      "Motive",        "database_entry_date",
      "Reference",   "Transportation_mode", "source_dataset", "source_row_id",
      "date_iso",    "duplicate_of"};
  return kFields;
}

ordered_json opt_json(const std::optional<std::string>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

ordered_json actor_json(const std::optional<ActorRef>& actor) {
  if (!actor) return nullptr;
  ordered_json j = ordered_json::object();
  j["name"] = actor->name;
  j["country"] = opt_json(actor->country);
  j["category"] = opt_json(actor->category);
  return j;
}

std::optional<std::string> opt_string(const nlohmann::json& doc, const char* field) {
  const auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::MalformedDocument, std::string("field '") + field + "' must be a string or null");
  }
  return it->get<std::string>();
}

std::string required_string(const nlohmann::json& doc, const char* field) {
  auto value = opt_string(doc, field);
  if (!value || text::trim(*value).empty()) {
    throw Error(ErrorCode::MissingRequiredField, std::string("required field '") + field + "' is absent or empty");
  }
  return *value;
}

std::optional<ActorRef> parse_actor(const nlohmann::json& doc, const char* field) {
  const auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_object()) {
    throw Error(ErrorCode::MalformedDocument, std::string("field '") + field + "' must be an object or null");
  }
  for (const auto& [name, value] : it->items()) {
    if (name != "name" && name != "country" && name != "category") {
      throw Error(ErrorCode::UnknownField, std::string("unknown field '") + field + "." + name + "'");
    }
  }
  ActorRef actor;
  auto name = opt_string(*it, "name");
  if (!name || text::trim(*name).empty()) {
    throw Error(ErrorCode::MissingRequiredField, std::string("field '") + field + ".name' is absent or empty");
  }
  actor.name = *name;
  actor.country = opt_string(*it, "country");
  actor.category = opt_string(*it, "category");
  return actor;
}

}  // namespace

std::string_view mode_name(TransportMode mode) noexcept {
  return kModeNames[static_cast<std::size_t>(mode)];
}

std::optional<TransportMode> parse_mode_label(std::string_view label) {
  label = text::trim(label);
  if (text::iequals_ascii(label, "null")) return TransportMode::None;
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (text::iequals_ascii(label, kModeNames[i])) return static_cast<TransportMode>(i);
  }
  return std::nullopt;
}

std::string DateIso::to_string() const {
  char buf[16];
  if (month && day) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, *month, *day);
  } else if (month) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, *month);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d", year);
  }
  return buf;
}

std::optional<DateIso> DateIso::from_string(std::string_view iso) {
  static const std::regex kIso(R"(^(\d{4})(?:-(\d{2})(?:-(\d{2}))?)?$)");
  std::cmatch m;
  if (!std::regex_match(iso.begin(), iso.end(), m, kIso)) return std::nullopt;
  std::optional<int> month;
  std::optional<int> day;
  if (m[2].matched) month = std::stoi(m[2].str());
  if (m[3].matched) day = std::stoi(m[3].str());
  return make_date(std::stoi(m[1].str()), month, day);
}

std::optional<DateIso> parse_date_text(std::string_view raw) {
  const std::string s = text::lowercase(text::trim(raw));
  if (s.empty()) return std::nullopt;

  static const std::regex kYear(R"(^(\d{4})$)");
  static const std::regex kIso(R"(^(\d{4})[-/](\d{1,2})(?:[-/](\d{1,2}))?(?:[t ].*)?$)");
  static const std::regex kUs(R"(^(\d{1,2})/(\d{1,2})/(\d{4})$)");
  static const std::regex kEu(R"(^(\d{1,2})\.(\d{1,2})\.(\d{4})$)");
  static const std::regex kMonthYear(R"(^([a-z]+)\.?,?\s+(\d{4})$)");
  static const std::regex kMonthDayYear(R"(^([a-z]+)\.?\s+(\d{1,2})(?:st|nd|rd|th)?,?\s+(\d{4})$)");
  static const std::regex kDayMonthYear(R"(^(\d{1,2})(?:st|nd|rd|th)?[\s-]+([a-z]+)\.?,?[\s-]+(\d{4})$)");

  std::smatch m;
  if (std::regex_match(s, m, kYear)) {
    return make_date(std::stoi(m[1]), std::nullopt, std::nullopt);
  }
  if (std::regex_match(s, m, kIso)) {
    std::optional<int> day;
    if (m[3].matched) day = std::stoi(m[3]);
    return make_date(std::stoi(m[1]), std::stoi(m[2]), day);
  }
  if (std::regex_match(s, m, kUs)) {
    return make_date(std::stoi(m[3]), std::stoi(m[1]), std::stoi(m[2]));
  }
  if (std::regex_match(s, m, kEu)) {
    return make_date(std::stoi(m[3]), std::stoi(m[2]), std::stoi(m[1]));
  }
  if (std::regex_match(s, m, kMonthYear)) {
    if (auto month = month_from_name(m[1].str())) {
      return make_date(std::stoi(m[2]), month, std::nullopt);
    }
    return std::nullopt;
  }
  if (std::regex_match(s, m, kMonthDayYear)) {
    if (auto month = month_from_name(m[1].str())) {
      return make_date(std::stoi(m[3]), month, std::stoi(m[2]));
    }
    return std::nullopt;
  }
  if (std::regex_match(s, m, kDayMonthYear)) {
    if (auto month = month_from_name(m[2].str())) {
      return make_date(std::stoi(m[3]), month, std::stoi(m[1]));
    }
  }
  return std::nullopt;
}

std::string RecordKey::to_string() const { return source + ":" + row_id; }

RecordKey RecordKey::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "record key '" + std::string(text) + "' lacks ':'");
  }
  return {std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
}

std::vector<Violation> validate_record(const IncidentRecord& r) {
  std::vector<Violation> out;
  if (text::trim(r.attack_name).empty()) out.push_back({"attack_name", "attack_name_empty"});
  if (text::trim(r.description).empty()) out.push_back({"description", "description_empty"});
  if (r.victim && text::trim(r.victim->name).empty()) out.push_back({"victim", "actor_name_empty"});
  if (r.attacker && text::trim(r.attacker->name).empty()) {
    out.push_back({"attacker", "actor_name_empty"});
  }
  if (r.date_iso) {
    if (!make_date(r.date_iso->year, r.date_iso->month, r.date_iso->day)) {
      out.push_back({"date_iso", "date_iso_invalid"});
    }
    bool consistent = false;
    if (r.date) {
      if (auto parsed = parse_date_text(*r.date)) {
        consistent = parsed->year == r.date_iso->year;
      } else {
        // Unparsed free text: accept when the year appears verbatim.
        static const std::regex kFourDigits(R"((^|\D)(\d{4})(?=\D|$))");
        const std::string& d = *r.date;
        for (auto it = std::sregex_iterator(d.begin(), d.end(), kFourDigits);
             it != std::sregex_iterator(); ++it) {
          if (std::stoi((*it)[2].str()) == r.date_iso->year) consistent = true;
        }
      }
    }
    if (!consistent) out.push_back({"date_iso", "date_year_mismatch"});
  }
  if (text::trim(r.source_row_id).empty() && !text::trim(r.source_dataset).empty()) {
    out.push_back({"source_row_id", "source_row_id_empty"});
  }
  return out;
}

ordered_json record_to_json(const IncidentRecord& r) {
  ordered_json j = ordered_json::object();
  j["attack_name"] = r.attack_name;
  j["incident_type"] = opt_json(r.incident_type);
  j["description"] = r.description;
  j["Date"] = opt_json(r.date);
  j["detection"] = opt_json(r.detection);
  j["victim"] = actor_json(r.victim);
  j["attacker"] = actor_json(r.attacker);
  j["Motive"] = opt_json(r.motive);
  j["database_entry_date"] = opt_json(r.database_entry_date);
  j["Reference"] = opt_json(r.reference);
  j["Transportation_mode"] = r.transportation_mode == TransportMode::None
                                 ? ordered_json(nullptr)
                                 : ordered_json(std::string(mode_name(r.transportation_mode)));
  j["source_dataset"] = r.source_dataset;
  j["source_row_id"] = r.source_row_id;
  j["date_iso"] = r.date_iso ? ordered_json(r.date_iso->to_string()) : ordered_json(nullptr);
  j["duplicate_of"] = opt_json(r.duplicate_of);
  return j;
}

IncidentRecord record_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::MalformedDocument, "canonical record must be a JSON object");
  }
  for (const auto& [name, value] : doc.items()) {
    if (!allowed_fields().contains(name)) {
      throw Error(ErrorCode::UnknownField, "unknown field '" + name + "'");
    }
  }
  IncidentRecord r;
  r.attack_name = required_string(doc, "attack_name");
  r.incident_type = opt_string(doc, "incident_type");
  r.description = required_string(doc, "description");
  r.date = opt_string(doc, "Date");
  r.detection = opt_string(doc, "detection");
  r.victim = parse_actor(doc, "victim");
  r.attacker = parse_actor(doc, "attacker");
  r.motive = opt_string(doc, "Motive");
  r.database_entry_date = opt_string(doc, "database_entry_date");
  r.reference = opt_string(doc, "Reference");
  if (auto label = opt_string(doc, "Transportation_mode")) {
    auto mode = parse_mode_label(*label);
    if (!mode) {
      throw Error(ErrorCode::MalformedDocument, "unknown Transportation_mode '" + *label + "'");
    }
    r.transportation_mode = *mode;
  }
  r.source_dataset = opt_string(doc, "source_dataset").value_or("");
  r.source_row_id = opt_string(doc, "source_row_id").value_or("");
  if (doc.contains("date_iso")) {
    if (auto iso = opt_string(doc, "date_iso")) {
      r.date_iso = DateIso::from_string(*iso);
      if (!r.date_iso) {
        throw Error(ErrorCode::MalformedDocument, "invalid date_iso '" + *iso + "'");
      }
    }
  } else if (r.date) {
    r.date_iso = parse_date_text(*r.date);
  }
  r.duplicate_of = opt_string(doc, "duplicate_of");
  return r;
}

std::string serialize_record(const IncidentRecord& record) {
  return record_to_json(record).dump(2, ' ', false, ordered_json::error_handler_t::replace);
}

IncidentRecord parse_record(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("invalid JSON: ") + e.what());
  }
  return record_from_json(doc);
}

std::string dedup_key(const IncidentRecord& r) {
  std::string key = text::lowercase(text::trim(r.victim ? r.victim->name : r.attack_name));
  key += '|';
  key += r.date_iso ? std::to_string(r.date_iso->year) : std::string("unknown");
  key += '|';
  key += text::lowercase(text::trim(r.incident_type.value_or("")));
  return key;
}

void IncidentStore::insert(IncidentRecord record) {
  if (sealed_) {
    throw Error(ErrorCode::InvalidArgument, "store is sealed");
  }
  auto key = record.key();
  if (records_.contains(key)) {
    throw Error(ErrorCode::KeyCollision, "duplicate record key " + key.to_string());
  }
  records_.emplace(std::move(key), std::move(record));
}

const IncidentRecord* IncidentStore::find(const RecordKey& key) const {
  const auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

std::vector<IncidentRecord> IncidentStore::records() const {
  std::vector<IncidentRecord> out;
  out.reserve(records_.size());
  for (const auto& [key, record] : records_) out.push_back(record);
  return out;
}

std::string serialize_store(const IncidentStore& store) {
  ordered_json array = ordered_json::array();
  for (const auto& [key, record] : store) array.push_back(record_to_json(record));
  return array.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

IncidentStore parse_store(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("invalid store JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::MalformedDocument, "store file must hold a JSON array");
  }
  IncidentStore store;
  for (const auto& element : doc) store.insert(record_from_json(element));
  store.seal();
  return store;
}

IncidentStore load_store(const std::string& path) { return parse_store(io::read_file(path)); }

void save_store(const IncidentStore& store, const std::string& path) {
  io::write_file(path, serialize_store(store));
}

}  // namespace incidentqa
