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

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "incidentqa/chunk.hpp"
#include "incidentqa/incident.hpp"

namespace incidentqa::testing {

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("incidentqa-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline IncidentRecord make_record(std::string source, std::string row_id, std::string attack,
                                  std::string description) {
  IncidentRecord r;
  r.attack_name = std::move(attack);
  r.description = std::move(description);
  r.source_dataset = std::move(source);
  r.source_row_id = std::move(row_id);
  return r;
}

/// One chunk per text, ids dense from 0, keys "t:<i>".
inline std::vector<Chunk> chunks_from(const std::vector<std::string>& texts) {
  std::vector<Chunk> out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Chunk c;
    c.chunk_id = static_cast<std::uint32_t>(i);
    c.record_keys = {RecordKey{"t", std::to_string(i)}};
    c.text = texts[i];
    out.push_back(std::move(c));
  }
  return out;
}

/// Space-separated words drawn from a small vocabulary so terms repeat.
inline std::string random_text(std::mt19937_64& rng, std::size_t max_tokens, std::size_t vocab = 40) {
  std::uniform_int_distribution<std::size_t> len(1, max_tokens);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += "w" + std::to_string(word(rng));
  }
  return s;
}

inline const char* fixture_dir() { return INCIDENTQA_FIXTURE_DIR; }

inline constexpr const char* kAirlineDocument = R"({
  "attack_name": "Chinese hackers exfiltrate United Airlines data",
  "incident_type": "Data Breach",
  "description": "Chinese hackers exfiltrated significant amounts of customer data from United Airlines.",
  "Date": "May 2015",
  "detection": null,
  "victim": {
    "name": "United Airlines",
    "country": "USA",
    "category": "corporate"
  },
  "attacker": {
    "name": "Chinese hackers",
    "country": "China",
    "category": "state institution"
  },
  "Motive": "financial",
  "database_entry_date": null,
  "Reference": null,
  "Transportation_mode": "Aviation"
})";

}  // namespace incidentqa::testing
