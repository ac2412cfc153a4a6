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

// Runs every acceptance criterion and prints one PASS/FAIL line per item.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "test_support.hpp"
#include "incidentqa/answer.hpp"
#include "incidentqa/chunk.hpp"
#include "incidentqa/classify.hpp"
#include "incidentqa/csv.hpp"
#include "incidentqa/error.hpp"
#include "incidentqa/eval.hpp"
#include "incidentqa/incident.hpp"
#include "incidentqa/index.hpp"
#include "incidentqa/ingest.hpp"
#include "incidentqa/io.hpp"
#include "incidentqa/retrieve.hpp"

namespace iq = incidentqa;

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(12);
    s << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// 1
void bm25_oracle(Check& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  std::size_t compared = 0;
  for (int corpus_no = 0; corpus_no < 25; ++corpus_no) {
    const std::size_t n = 1 + rng() % 50;
    std::vector<std::string> texts;
    std::vector<iq::TokenSeq> corpus;
    for (std::size_t i = 0; i < n; ++i) {
      texts.push_back(iq::testing::random_text(rng, 200, 60));
      corpus.push_back(iq::tokenize(texts.back()));
    }
    const auto idx = iq::SparseIndex::build(iq::testing::chunks_from(texts));
    for (int q = 0; q < 100; ++q) {
      const auto query = iq::tokenize(iq::testing::random_text(rng, 8, 80));
      for (std::uint32_t id = 0; id < n; ++id) {
        const double want = iq::oracle::bm25(corpus, query, id, 1.5, 0.75);
        const double got = iq::bm25(query, id, idx, 1.5, 0.75);
        c.near(got, want, 1e-9, "bm25 corpus " + std::to_string(corpus_no) + " chunk " + std::to_string(id));
        ++compared;
      }
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s exceeds 10 s");
  c.expect(compared > 0, "nothing compared");
}

// 2
void idf_spot(Check& c) {
  c.near(iq::idf_value(3, 2), std::log(1.6), 1e-6, "idf(N=3, n=2)");
  c.near(iq::idf_value(1, 1), std::log(4.0 / 3.0), 1e-6, "idf(N=1, n=1)");
  c.near(iq::idf_value(3, 2), 0.4700, 1e-4, "idf(N=3, n=2) rounded");
  c.near(iq::idf_value(1, 1), 0.2877, 1e-4, "idf(N=1, n=1) rounded");
  const auto idx = iq::SparseIndex::build(iq::testing::chunks_from({"a b", "a c", "d"}));
  c.near(iq::idf("a", idx), std::log(1.6), 1e-6, "idf of a term in 2 of 3 chunks");
}

// 3
void fusion_endpoints(Check& c) {
  std::mt19937_64 rng(3003);
  iq::HashingEmbedder embedder;
  for (int corpus_no = 0; corpus_no < 20; ++corpus_no) {
    std::vector<std::string> texts;
    const std::size_t n = 2 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i) texts.push_back(iq::testing::random_text(rng, 60, 30));
    const auto chunks = iq::testing::chunks_from(texts);
    const auto [sparse, dense] = iq::build_indexes(chunks, embedder, 1);
    const std::string query_text = iq::testing::random_text(rng, 6, 30);
    const auto qt = iq::tokenize(query_text);
    const auto qv = iq::embed(query_text, embedder);
    iq::RetrievalConfig cfg;
    cfg.k = 1 + rng() % 8;

    const auto dense_scores = dense.dot_all(qv);
    std::vector<double> sparse_scores(n);
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      all[i] = i;
      sparse_scores[i] = iq::bm25(qt, i, sparse, cfg.k1, cfg.b);
    }
    // Candidate union built independently of the library's top-k.
    std::set<std::uint32_t> pool;
    const std::array<const std::vector<double>*, 2> families = {&dense_scores, &sparse_scores};
    for (const auto* scores : families) {
      const auto ranked = iq::oracle::rank_by(all, [&](std::uint32_t i) { return (*scores)[i]; });
      std::size_t taken = 0;
      for (const auto id : ranked) {
        if (taken == cfg.k || (*scores)[id] <= 0) break;
        pool.insert(id);
        ++taken;
      }
    }
    const std::vector<std::uint32_t> union_ids(pool.begin(), pool.end());
    for (const double alpha : {1.0, 0.0}) {
      cfg.alpha = alpha;
      const auto& scores = alpha == 1.0 ? dense_scores : sparse_scores;
      auto want = iq::oracle::rank_by(union_ids, [&](std::uint32_t i) { return scores[i]; });
      if (want.size() > cfg.k) want.resize(cfg.k);
      std::vector<std::uint32_t> got;
      try {
        for (const auto& s : iq::retrieve(qt, qv, cfg, sparse, dense)) got.push_back(s.chunk_id);
      } catch (const iq::Error& e) {
        c.expect(want.empty() && e.code() == iq::ErrorCode::EmptyRetrieval,
                 std::string("unexpected error: ") + e.what());
        continue;
      }
      c.expect(got == want, "corpus " + std::to_string(corpus_no) + " alpha " + std::to_string(alpha) +
                                " ordering differs from the single-retriever ordering");
    }
  }
}

// 4
void chunker(Check& c) {
  const auto one = iq::plan_windows(768, 768, 100);
  c.expect(one.size() == 1 && one[0].start == 0 && one[0].length == 768, "768 tokens should give one chunk");
  const auto two = iq::plan_windows(868, 768, 100);
  c.expect(two.size() == 2, "868 tokens should give two chunks");
  if (two.size() == 2) {
    c.expect(two[0].start == 0 && two[1].start == 668, "offsets should be {0, 668}");
    c.expect(two[0].length == 768 && two[1].length == 200, "lengths should be {768, 200}");
  }
  std::string doc;
  for (int i = 0; i < 868; ++i) doc += "t" + std::to_string(i) + " ";
  const auto chunks = iq::chunk_document(doc, {iq::RecordKey{"s", "1"}}, 768, 100, 0);
  c.expect(chunks.size() == 2 && chunks[1].token_count == 200 && chunks[1].start_token == 668,
           "chunk_document disagrees with the window plan");

  std::mt19937_64 rng(4004);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 3000;
    const std::size_t size = 2 + rng() % 800;
    const std::size_t overlap = rng() % size;
    const auto w = iq::plan_windows(n, size, overlap);
    bool ok = !w.empty() && w.front().start == 0 && w.back().start + w.back().length == n;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      covered += w[i].length;
      if (i + 1 < w.size()) {
        ok = ok && w[i].length == size && w[i].start + w[i].length - w[i + 1].start == overlap;
      }
    }
    ok = ok && covered == n + overlap * (w.size() - 1);
    c.expect(ok, "overlap conservation fails for n=" + std::to_string(n) + " size=" + std::to_string(size) +
                     " overlap=" + std::to_string(overlap));
  }
}

// 5
void rouge(Check& c) {
  const std::string cand = "the port attacked", ref = "the port was attacked";
  c.near(iq::rouge_n(cand, ref, 1).f1, 6.0 / 7.0, 1e-6, "ROUGE-1 f1");
  c.near(iq::rouge_n(cand, ref, 1).f1, 0.857, 1e-3, "ROUGE-1 f1 rounded");
  c.near(iq::rouge_n(cand, ref, 2).f1, 0.4, 1e-6, "ROUGE-2 f1");
  c.near(iq::rouge_l(cand, ref).f1, 6.0 / 7.0, 1e-6, "ROUGE-L f1");
  c.near(iq::token_metrics(cand, ref).accuracy, 0.75, 1e-6, "token accuracy");

  // Every pair of sequences up to 6 tokens over a 2-letter alphabet, plus
  // random pairs up to 12 tokens over a wider one.
  std::vector<iq::TokenSeq> small;
  for (std::size_t len = 0; len <= 6; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      iq::TokenSeq s;
      for (std::size_t i = 0; i < len; ++i) s.push_back((bits >> i) & 1 ? "a" : "b");
      small.push_back(s);
    }
  }
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (iq::lcs_length(a, b) != iq::oracle::lcs_exhaustive(a, b)) {
        c.expect(false, "LCS mismatch on exhaustive small pairs");
        return;
      }
    }
  }
  std::mt19937_64 rng(5005);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 20000; ++trial) {
    iq::TokenSeq a(rng() % 13), b(rng() % 13);
    for (auto& t : a) t = vocab[rng() % vocab.size()];
    for (auto& t : b) t = vocab[rng() % vocab.size()];
    if (iq::lcs_length(a, b) != iq::oracle::lcs_exhaustive(a, b)) {
      c.expect(false, "LCS mismatch on random pair " + std::to_string(trial));
      return;
    }
  }
}

// 6
void classification_scoring(Check& c) {
  using iq::TransportMode;
  std::vector<iq::ClassifierVerdict> pred;
  std::vector<iq::GoldLabel> gold;
  int id = 0;
  std::size_t partial_made = 0;
  bool aviation_error = false, none_error = false;
  for (const char* source : {"csis", "eurepoc", "umced"}) {
    for (const auto mode : iq::kAllModes) {
      for (int i = 0; i < 5; ++i) {
        const iq::RecordKey key{source, std::to_string(id++)};
        iq::GoldLabel g{key, mode, {}};
        TransportMode p = mode;
        if (mode == TransportMode::Multimodal) {
          g.constituents = {TransportMode::Maritime, TransportMode::Rail};
          if (partial_made < 6) {
            p = TransportMode::Rail;
            ++partial_made;
          }
        } else if (mode == TransportMode::Aviation && !aviation_error) {
          p = TransportMode::Maritime;
          aviation_error = true;
        } else if (mode == TransportMode::None && !none_error) {
          p = TransportMode::Maritime;
          none_error = true;
        }
        gold.push_back(g);
        pred.push_back({key, p, std::nullopt, iq::ClassifierId::Llm});
      }
    }
  }
  const auto s = iq::score_classification(pred, gold);
  c.expect(s.total == 90, "total " + std::to_string(s.total));
  c.expect(s.correct == 82, "correct " + std::to_string(s.correct));
  c.expect(s.incorrect == 8, "incorrect " + std::to_string(s.incorrect));
  c.expect(s.partial == 6, "partial " + std::to_string(s.partial));
  c.expect(s.incorrect - s.partial == 2, "completely incorrect " + std::to_string(s.incorrect - s.partial));
  c.expect(s.false_nulls == 0, "false nulls " + std::to_string(s.false_nulls));
  c.near(s.accuracy, 0.8889, 5e-5, "accuracy = correct / total");
}

iq::IncidentRecord random_record(std::mt19937_64& rng, int i) {
  const std::vector<std::string> words = {"Ünïcode", "quote\"d", "tab\tbed", "new\nline", "plain", "back\\slash",
                                          "日本語", "ferry", "port"};
  const auto word = [&] { return words[rng() % words.size()] + std::to_string(rng() % 1000); };
  const auto maybe = [&](std::string v) -> std::optional<std::string> {
    return rng() % 2 ? std::optional<std::string>(std::move(v)) : std::nullopt;
  };
  iq::IncidentRecord r;
  r.attack_name = word();
  r.description = word() + " " + word();
  r.incident_type = maybe(word());
  if (rng() % 2) {
    const int year = 1995 + static_cast<int>(rng() % 30);
    const int month = 1 + static_cast<int>(rng() % 12);
    r.date_iso = iq::DateIso{year, month, std::nullopt};
    r.date = std::to_string(year) + "-" + (month < 10 ? "0" : "") + std::to_string(month);
  }
  r.detection = maybe(word());
  if (rng() % 2) r.victim = iq::ActorRef{word(), maybe(word()), maybe(word())};
  if (rng() % 2) r.attacker = iq::ActorRef{word(), maybe(word()), maybe(word())};
  r.motive = maybe(word());
  r.database_entry_date = maybe(word());
  r.reference = maybe("https://example.org/" + std::to_string(i));
  r.transportation_mode = iq::kAllModes[rng() % iq::kAllModes.size()];
  r.source_dataset = "src" + std::to_string(rng() % 3);
  r.source_row_id = std::to_string(i);
  return r;
}

// 7
void round_trip(Check& c) {
  const auto airline = iq::parse_record(iq::testing::kAirlineDocument);
  const std::string doc = iq::serialize_record(airline);
  c.expect(iq::parse_record(doc) == airline, "published example does not survive parse(serialize)");
  c.expect(iq::serialize_record(iq::parse_record(doc)) == doc, "published example re-serialization differs");
  c.expect(airline.victim && airline.victim->name == "United Airlines" &&
               airline.transportation_mode == iq::TransportMode::Aviation,
           "published example fields");
  std::mt19937_64 rng(7007);
  for (int i = 0; i < 200; ++i) {
    const auto r = random_record(rng, i);
    if (!iq::validate_record(r).empty()) {
      c.expect(false, "generator produced an invalid record");
      continue;
    }
    const std::string once = iq::serialize_record(r);
    const auto back = iq::parse_record(once);
    c.expect(back == r, "record " + std::to_string(i) + " changed in round trip");
    c.expect(iq::serialize_record(back) == once, "record " + std::to_string(i) + " re-serialization differs");
  }
}

std::string fixture(const std::string& name) { return std::string(iq::testing::fixture_dir()) + "/" + name; }

// 8
void end_to_end(Check& c) {
  const auto start = Clock::now();
  const auto map = iq::FieldMap::from_json(nlohmann::json::parse(iq::io::read_file(fixture("incidents_50.map.json"))));
  const auto rows = iq::csv::parse(iq::io::read_file(fixture("incidents_50.csv")), map.separator);
  auto ingested = iq::ingest_delimited(rows, map, "fixture");
  c.expect(ingested.records.size() == 50, "ingested " + std::to_string(ingested.records.size()) + " records");
  iq::IncidentStore raw;
  for (auto& r : ingested.records) raw.insert(std::move(r));
  std::vector<iq::ClassifierVerdict> verdicts;
  for (const auto& [key, r] : raw) verdicts.push_back(iq::classify_rules(r));
  auto transport = iq::filter_transportation(raw, verdicts);
  c.expect(transport.size() == 40, "filter kept " + std::to_string(transport.size()) + " of 50");

  iq::HashingEmbedder embedder;
  iq::StubGenerator stub;
  std::map<iq::RecordKey, std::string> victims;
  for (const auto& [key, r] : transport) {
    if (r.victim) victims[key] = r.victim->name;
  }
  const auto kb = iq::build_knowledge_base(std::move(transport), embedder);

  std::size_t asked = 0;
  for (const auto& [key, victim] : victims) {
    if (asked == 10) break;
    ++asked;
    const auto result = iq::generate_answer("What happened to " + victim + "?", iq::AnswerConfig{}, kb, embedder, stub);
    bool in_top5 = false;
    for (const auto& s : result.retrieved) {
      for (const auto& k : kb.chunks[s.chunk_id].record_keys) in_top5 = in_top5 || (k == key && s.rank <= 5);
    }
    c.expect(in_top5, victim + " not in the top 5");
    c.expect(std::find(result.cited.begin(), result.cited.end(), key) != result.cited.end(),
             victim + " not cited");
    c.expect(result.answer.find(victim) != std::string::npos, victim + " absent from the answer");
  }
  c.expect(asked == 10, "only " + std::to_string(asked) + " victims available");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s exceeds 30 s");
}

// 9
void persistence(Check& c) {
  std::mt19937_64 rng(9009);
  iq::IncidentStore store;
  for (int i = 0; i < 60; ++i) {
    auto r = iq::testing::make_record("p", std::to_string(i), "incident " + std::to_string(i),
                                      iq::testing::random_text(rng, 120, 80));
    store.insert(r);
  }
  iq::HashingEmbedder embedder;
  const auto kb = iq::build_knowledge_base(std::move(store), embedder, {96, 16, 2});
  iq::testing::TempDir dir;
  const std::string path = dir / "index";
  iq::save_knowledge_base(kb, path);
  const auto loaded = iq::load_knowledge_base(path);
  for (int q = 0; q < 50; ++q) {
    const std::string query = iq::testing::random_text(rng, 6, 80);
    iq::RetrievalConfig cfg;
    cfg.alpha = (rng() % 11) / 10.0;
    cfg.k = 1 + rng() % 10;
    const auto a = iq::retrieve(query, cfg, kb, embedder);
    const auto b = iq::retrieve(query, cfg, loaded, embedder);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
      same = a[i].chunk_id == b[i].chunk_id && a[i].hybrid == b[i].hybrid;
    }
    c.expect(same, "ranking differs after reload for query " + std::to_string(q));
  }
  for (const char* file : {"postings.bin", "vectors.bin", "chunks.json", "store.json"}) {
    iq::testing::TempDir copy;
    std::filesystem::copy(path, copy.path(), std::filesystem::copy_options::recursive);
    std::string bytes = iq::io::read_file(copy / file);
    bytes[bytes.size() / 2] ^= 0x20;
    iq::io::write_file(copy / file, bytes);
    try {
      iq::load_knowledge_base(copy.path().string());
      c.expect(false, std::string("corrupted ") + file + " was accepted");
    } catch (const iq::Error& e) {
      c.expect(e.code() == iq::ErrorCode::ChecksumMismatch,
               std::string("corrupted ") + file + " raised " + std::string(iq::error_code_name(e.code())));
    }
  }
}

// 10
void sampler(Check& c) {
  iq::IncidentStore store;
  int id = 0;
  for (const char* source : {"csis", "eurepoc", "umced"}) {
    for (const auto mode : iq::kAllModes) {
      for (int i = 0; i < 12; ++i) {
        auto r = iq::testing::make_record(source, std::to_string(id++), "a", "d");
        r.transportation_mode = mode;
        store.insert(r);
      }
    }
  }
  store.seal();
  const auto a = iq::sample_eval_set(store, 20240917);
  const auto b = iq::sample_eval_set(store, 20240917);
  c.expect(a.size() == 90, "sample has " + std::to_string(a.size()) + " items");
  std::string sa, sb;
  for (const auto& r : a) sa += iq::serialize_record(r);
  for (const auto& r : b) sb += iq::serialize_record(r);
  c.expect(sa == sb, "samples differ across runs with the same seed");
  std::map<std::pair<std::string, iq::TransportMode>, int> cells;
  for (const auto& r : a) ++cells[{r.source_dataset, r.transportation_mode}];
  bool five_each = cells.size() == 18;
  for (const auto& [cell, n] : cells) five_each = five_each && n == 5;
  c.expect(five_each, "cells are not five per (source, mode)");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"BM25 oracle equivalence", bm25_oracle},
      {"IDF spot values", idf_spot},
      {"Fusion endpoints", fusion_endpoints},
      {"Chunker arithmetic", chunker},
      {"ROUGE oracles", rouge},
      {"Classification scoring fixture", classification_scoring},
      {"Canonical round-trip", round_trip},
      {"Offline end-to-end", end_to_end},
      {"Persistence", persistence},
      {"Seeded sampler", sampler},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = Clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("[%s] %zu. %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(start));
    for (const auto& f : check.failures) std::printf("       %s\n", f.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
