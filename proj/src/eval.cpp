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

#include "incidentqa/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include "incidentqa/csv.hpp"
#include "incidentqa/error.hpp"
#include "incidentqa/io.hpp"
#include "incidentqa/text.hpp"

namespace incidentqa {

using text::iequals_ascii;
using text::trim;

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::map<std::vector<std::string_view>, std::size_t> ngram_counts(const TokenSeq& tokens, std::size_t n) {
  std::map<std::vector<std::string_view>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string_view>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                           tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

PRF make_prf(double p, double r) { return {p, r, f1_of(p, r)}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<RecordKey> parse_keys(std::string_view text) {
  std::vector<RecordKey> keys;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const auto part = trim(text.substr(start, end - start));
    if (!part.empty()) keys.push_back(RecordKey::parse(part));
    start = end + 1;
  }
  return keys;
}

TestItem checked(TestItem item, std::size_t index) {
  if (trim(item.question).empty() || trim(item.reference).empty()) {
    throw Error(ErrorCode::MissingRequiredField,
                "test item " + std::to_string(index + 1) + " needs a question and a reference");
  }
  return item;
}

}  // namespace

double f1_of(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

PRF rouge_n(const TokenSeq& candidate, const TokenSeq& reference, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "rouge n must be at least 1");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  const std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  return make_prf(ratio(overlap, cand_total), ratio(overlap, ref_total));
}

PRF rouge_n(std::string_view candidate, std::string_view reference, std::size_t n) {
  return rouge_n(tokenize(candidate), tokenize(reference), n);
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

PRF rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
  const std::size_t l = lcs_length(candidate, reference);
  return make_prf(ratio(l, candidate.size()), ratio(l, reference.size()));
}

PRF rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l(tokenize(candidate), tokenize(reference));
}

TokenScores token_metrics(const TokenSeq& candidate, const TokenSeq& reference) {
  const std::set<std::string_view> c(candidate.begin(), candidate.end());
  const std::set<std::string_view> r(reference.begin(), reference.end());
  std::size_t common = 0;
  for (const auto& t : c) common += r.count(t);
  const std::size_t uni = c.size() + r.size() - common;
  return {ratio(common, c.size()), ratio(common, r.size()), ratio(common, uni)};
}

TokenScores token_metrics(std::string_view candidate, std::string_view reference) {
  return token_metrics(tokenize(candidate), tokenize(reference));
}

ItemScores score_answer(std::string_view candidate, std::string_view reference) {
  const TokenSeq c = tokenize(candidate);
  const TokenSeq r = tokenize(reference);
  return {rouge_n(c, r, 1), rouge_n(c, r, 2), rouge_l(c, r), token_metrics(c, r)};
}

std::vector<TestItem> parse_testset(std::string_view text) {
  std::vector<TestItem> items;
  const auto body = trim(text);
  if (body.empty()) throw Error(ErrorCode::EmptyInput, "test set is empty");
  if (body.front() == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedDocument, std::string("test set: ") + e.what());
    }
    for (const auto& e : doc) {
      if (!e.is_object()) throw Error(ErrorCode::MalformedDocument, "test set entries must be objects");
      TestItem item;
      try {
        item.question = e.value("question", "");
        item.reference = e.value("reference", "");
        if (e.contains("record_keys")) {
          for (const auto& k : e.at("record_keys")) item.record_keys.push_back(RecordKey::parse(k.get<std::string>()));
        }
      } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedDocument,
                    "test set item " + std::to_string(items.size() + 1) + ": " + ex.what());
      }
      items.push_back(checked(std::move(item), items.size()));
    }
  } else {
    const auto rows = csv::parse(body);
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "test set is empty");
    const auto& header = rows.front();
    const auto col = [&](std::string_view name) -> std::ptrdiff_t {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (iequals_ascii(trim(header[i]), name)) return static_cast<std::ptrdiff_t>(i);
      }
      return -1;
    };
    const auto q = col("question"), r = col("reference"), k = col("record_keys");
    if (q < 0 || r < 0) {
      throw Error(ErrorCode::HeaderMismatch, "test set header needs question and reference columns");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() == 1 && trim(row[0]).empty()) continue;
      const auto field = [&](std::ptrdiff_t c) {
        return c >= 0 && static_cast<std::size_t>(c) < row.size() ? row[static_cast<std::size_t>(c)] : std::string();
      };
      TestItem item{field(q), field(r), parse_keys(field(k))};
      items.push_back(checked(std::move(item), items.size()));
    }
  }
  if (items.empty()) throw Error(ErrorCode::EmptyInput, "test set has no items");
  return items;
}

std::vector<TestItem> load_testset(const std::string& path) { return parse_testset(io::read_file(path)); }

MetricReport run_eval(const std::vector<TestItem>& testset, const AnswerFn& system,
                      std::size_t parallelism) {
  if (testset.empty()) throw Error(ErrorCode::EmptyInput, "test set has no items");
  MetricReport report;
  report.items.resize(testset.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < testset.size(); i = next.fetch_add(1)) {
      ItemResult& out = report.items[i];
      out.index = i;
      out.question = testset[i].question;
      out.reference = testset[i].reference;
      try {
        out.answer = system(testset[i]);
        out.scores = score_answer(out.answer, out.reference);
      } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, testset.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ItemScores sum;
  for (const auto& item : report.items) {
    if (item.failed) {
      ++report.failed;
      continue;
    }
    ++report.scored;
    const auto add = [](PRF& a, const PRF& b) {
      a.precision += b.precision;
      a.recall += b.recall;
      a.f1 += b.f1;
    };
    add(sum.rouge1, item.scores.rouge1);
    add(sum.rouge2, item.scores.rouge2);
    add(sum.rougeL, item.scores.rougeL);
    sum.tokens.precision += item.scores.tokens.precision;
    sum.tokens.recall += item.scores.tokens.recall;
    sum.tokens.accuracy += item.scores.tokens.accuracy;
  }
  if (report.scored > 0) {
    const double n = static_cast<double>(report.scored);
    for (PRF* p : {&sum.rouge1, &sum.rouge2, &sum.rougeL}) {
      p->precision /= n;
      p->recall /= n;
      p->f1 /= n;
    }
    sum.tokens.precision /= n;
    sum.tokens.recall /= n;
    sum.tokens.accuracy /= n;
  }
  report.average = sum;
  return report;
}

std::string MetricReport::to_csv() const {
  std::string out = csv::format_row(
      {"item", "question", "reference", "answer", "status", "rouge1_p", "rouge1_r", "rouge1_f1",
       "rouge2_p", "rouge2_r", "rouge2_f1", "rougeL_p", "rougeL_r", "rougeL_f1", "token_precision",
       "token_recall", "token_accuracy"});
  for (const auto& it : items) {
    const auto& s = it.scores;
    csv::Row row{std::to_string(it.index + 1), it.question, it.reference, it.answer,
                 it.failed ? "failed: " + it.error : "ok"};
    for (const PRF* p : {&s.rouge1, &s.rouge2, &s.rougeL}) {
      row.push_back(it.failed ? "" : fmt(p->precision));
      row.push_back(it.failed ? "" : fmt(p->recall));
      row.push_back(it.failed ? "" : fmt(p->f1));
    }
    row.push_back(it.failed ? "" : fmt(s.tokens.precision));
    row.push_back(it.failed ? "" : fmt(s.tokens.recall));
    row.push_back(it.failed ? "" : fmt(s.tokens.accuracy));
    out += csv::format_row(row);
  }
  out += "\n";
  out += csv::format_row({"metric", "average"});
  out += csv::format_row({"rouge1_f1", fmt(average.rouge1.f1)});
  out += csv::format_row({"rouge2_f1", fmt(average.rouge2.f1)});
  out += csv::format_row({"rougeL_f1", fmt(average.rougeL.f1)});
  out += csv::format_row({"token_precision", fmt(average.tokens.precision)});
  out += csv::format_row({"token_recall", fmt(average.tokens.recall)});
  out += csv::format_row({"token_accuracy", fmt(average.tokens.accuracy)});
  out += csv::format_row({"items_scored", std::to_string(scored)});
  out += csv::format_row({"items_failed", std::to_string(failed)});
  return out;
}

nlohmann::ordered_json MetricReport::to_json() const {
  nlohmann::ordered_json series;
  const auto column = [&](auto get) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& it : items) {
      if (it.failed) {
        arr.push_back(nullptr);
      } else {
        arr.push_back(get(it.scores));
      }
    }
    return arr;
  };
  nlohmann::ordered_json index = nlohmann::ordered_json::array();
  for (const auto& it : items) index.push_back(it.index + 1);
  series["item"] = index;
  series["rouge1_f1"] = column([](const ItemScores& s) { return s.rouge1.f1; });
  series["rouge2_f1"] = column([](const ItemScores& s) { return s.rouge2.f1; });
  series["rougeL_f1"] = column([](const ItemScores& s) { return s.rougeL.f1; });
  series["token_precision"] = column([](const ItemScores& s) { return s.tokens.precision; });
  series["token_recall"] = column([](const ItemScores& s) { return s.tokens.recall; });
  series["token_accuracy"] = column([](const ItemScores& s) { return s.tokens.accuracy; });

  nlohmann::ordered_json doc;
  doc["series"] = series;
  doc["averages"] = {{"rouge1_f1", average.rouge1.f1},
                     {"rouge2_f1", average.rouge2.f1},
                     {"rougeL_f1", average.rougeL.f1},
                     {"token_precision", average.tokens.precision},
                     {"token_recall", average.tokens.recall},
                     {"token_accuracy", average.tokens.accuracy}};
  doc["items_scored"] = scored;
  doc["items_failed"] = failed;
  return doc;
}

}  // namespace incidentqa
