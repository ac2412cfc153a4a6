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

#include "incidentqa/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "incidentqa/answer.hpp"
#include "incidentqa/classify.hpp"
#include "incidentqa/config.hpp"
#include "incidentqa/csv.hpp"
#include "incidentqa/error.hpp"
#include "incidentqa/eval.hpp"
#include "incidentqa/index.hpp"
#include "incidentqa/ingest.hpp"
#include "incidentqa/io.hpp"
#include "incidentqa/service.hpp"

namespace incidentqa::cli {

namespace {

namespace fs = std::filesystem;

int exit_code(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::Usage:
      return 2;
    case ErrorFamily::Input:
      return 3;
    case ErrorFamily::Provider:
      return 4;
    case ErrorFamily::Storage:
      return 5;
  }
  return 1;
}

FieldMap load_field_map(const std::string& path) {
  const std::string text = io::read_file(path);
  try {
    return FieldMap::from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFieldMap, path + ": " + e.what());
  }
}

struct Common {
  std::string config_path;
  bool stub_llm = false;

  AppConfig config() const { return config_path.empty() ? AppConfig{} : load_config(config_path); }
};

struct RetrievalFlags {
  double alpha = 0.5;
  std::size_t top_k = 5;
  double k1 = 1.5;
  double b = 0.75;
  bool normalize = false;
  std::size_t budget = kDefaultContextBudget;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* top_k_opt = nullptr;
  CLI::Option* k1_opt = nullptr;
  CLI::Option* b_opt = nullptr;
  CLI::Option* normalize_opt = nullptr;
  CLI::Option* budget_opt = nullptr;

  void add_to(CLI::App* cmd) {
    alpha_opt = cmd->add_option("--alpha", alpha, "Dense weight in the hybrid score, in [0, 1]");
    top_k_opt = cmd->add_option("--top-k", top_k, "Chunks retrieved per question");
    k1_opt = cmd->add_option("--k1", k1, "BM25 term saturation");
    b_opt = cmd->add_option("--b", b, "BM25 length normalization, in [0, 1]");
    normalize_opt = cmd->add_flag("--normalize-scores", normalize, "Min-max normalize scores before fusion");
    budget_opt = cmd->add_option("--context-budget", budget, "Token budget per generation batch");
  }

  AnswerConfig apply(AnswerConfig cfg) const {
    if (alpha_opt->count()) cfg.retrieval.alpha = alpha;
    if (top_k_opt->count()) cfg.retrieval.k = top_k;
    if (k1_opt->count()) cfg.retrieval.k1 = k1;
    if (b_opt->count()) cfg.retrieval.b = b;
    if (normalize_opt->count()) cfg.retrieval.normalize_scores = normalize;
    if (budget_opt->count()) cfg.context_budget = budget;
    cfg.retrieval.validate();
    if (cfg.context_budget == 0) throw Error(ErrorCode::InvalidParams, "context budget must be positive");
    return cfg;
  }
};

void print_report(std::ostream& out, const nlohmann::json& report) { out << report.dump(2) << "\n"; }

// --- subcommands -----------------------------------------------------------

struct IngestArgs {
  std::string source, adapter = "delimited", map, out, source_id;
};

int do_ingest(const IngestArgs& a, const Common& common, std::ostream& out) {
  const std::string source_id = a.source_id.empty() ? fs::path(a.source).stem().string() : a.source_id;
  const std::string text = io::read_file(a.source);
  IngestResult result;
  if (a.adapter == "delimited" || a.adapter == "text") {
    if (a.map.empty()) throw Error(ErrorCode::InvalidArgument, "--map is required for the " + a.adapter + " adapter");
    const FieldMap map = load_field_map(a.map);
    if (a.adapter == "delimited") {
      result = ingest_delimited(csv::parse(text, map.separator), map, source_id);
    } else {
      result = ingest_text_records(text, map.block_delimiter, map, source_id);
    }
  } else if (a.adapter == "llm") {
    auto providers = providers_from_env(common.stub_llm);
    result = extract_records_llm(text, *providers.generator, source_id);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown adapter '" + a.adapter + "'");
  }
  IncidentStore store;
  for (auto& r : result.records) store.insert(std::move(r));
  store.seal();
  save_store(store, a.out);
  print_report(out, result.report.to_json());
  return 0;
}

int do_merge(const std::vector<std::string>& stores, const std::string& out_path, std::ostream& out) {
  std::vector<std::vector<IncidentRecord>> batches;
  for (const auto& path : stores) batches.push_back(load_store(path).records());
  auto merged = merge_sources(batches);
  save_store(merged.store, out_path);
  print_report(out, merged.report.to_json());
  return 0;
}

int do_classify(const std::string& store_path, const std::string& engine, const std::string& out_path,
                const Common& common, std::ostream& out) {
  const AppConfig cfg = common.config();
  const IncidentStore store = load_store(store_path);
  std::vector<ClassifierVerdict> verdicts;
  if (engine == "rules") {
    for (const auto& [key, record] : store) verdicts.push_back(classify_rules(record, cfg.rules()));
  } else if (engine == "llm") {
    auto providers = providers_from_env(common.stub_llm);
    const auto records = store.records();
    verdicts = classify_all_llm(records, *providers.generator, cfg.classify_parallelism, cfg.rules());
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown engine '" + engine + "'");
  }
  io::write_file(out_path, verdicts_to_csv(verdicts));
  std::map<std::string, std::size_t> counts;
  for (const auto& v : verdicts) ++counts[std::string(mode_name(v.predicted))];
  print_report(out, {{"records", verdicts.size()}, {"predicted", counts}});
  return 0;
}

int do_filter(const std::string& store_path, const std::string& verdicts_path, const std::string& out_path,
              const std::vector<std::string>& transport_only, const Common& common, std::ostream& out) {
  AppConfig cfg = common.config();
  cfg.transport_only_sources.insert(transport_only.begin(), transport_only.end());
  const IncidentStore store = load_store(store_path);
  const auto verdicts = verdicts_from_csv(io::read_file(verdicts_path));
  const IncidentStore kept = filter_transportation(store, verdicts, cfg.transport_only_sources);
  save_store(kept, out_path);
  print_report(out, {{"records_in", store.size()}, {"records_kept", kept.size()}});
  return 0;
}

int do_sample(const std::string& store_path, std::uint64_t seed, std::size_t per_cell,
              const std::string& out_path, std::ostream& out) {
  const IncidentStore store = load_store(store_path);
  IncidentStore sample;
  for (auto& r : sample_eval_set(store, seed, per_cell)) sample.insert(std::move(r));
  sample.seal();
  save_store(sample, out_path);
  print_report(out, {{"records", sample.size()}, {"seed", seed}});
  return 0;
}

int do_index(const std::string& store_path, const std::string& out_dir, std::size_t chunk_size,
             std::size_t overlap, bool size_given, bool overlap_given, const Common& common,
             std::ostream& out) {
  AppConfig cfg = common.config();
  if (size_given) cfg.index.chunk_size = chunk_size;
  if (overlap_given) cfg.index.chunk_overlap = overlap;
  IncidentStore store = load_store(store_path);
  auto providers = providers_from_env(common.stub_llm, cfg.embedding_dimension);
  const KnowledgeBase kb = build_knowledge_base(std::move(store), *providers.embedder, cfg.index);
  save_knowledge_base(kb, out_dir);
  const IndexManifest m = read_manifest(out_dir);
  print_report(out, {{"chunks", m.num_chunks},
                     {"records", kb.store.size()},
                     {"embedding_provider", m.embedding_provider},
                     {"dimension", m.dimension},
                     {"checksum", m.checksum}});
  return 0;
}

int do_query(const std::string& index_dir, const std::string& question, const RetrievalFlags& flags,
             bool as_json, const Common& common, std::ostream& out) {
  const AppConfig cfg = common.config();
  const AnswerConfig answer_cfg = flags.apply(cfg.answer);
  const KnowledgeBase kb = load_knowledge_base(index_dir);
  auto providers = providers_from_env(common.stub_llm, cfg.embedding_dimension);
  const AnswerResult result = generate_answer(question, answer_cfg, kb, *providers.embedder, *providers.generator);
  if (as_json) {
    nlohmann::ordered_json j;
    j["question"] = result.question;
    j["answer"] = result.answer;
    nlohmann::ordered_json cited = nlohmann::ordered_json::array();
    for (const auto& k : result.cited) cited.push_back(k.to_string());
    j["cited"] = cited;
    nlohmann::ordered_json ranked = nlohmann::ordered_json::array();
    for (const auto& s : result.retrieved) {
      ranked.push_back({{"rank", s.rank}, {"chunk_id", s.chunk_id}, {"dense", s.dense},
                        {"sparse", s.sparse}, {"hybrid", s.hybrid}});
    }
    j["retrieval"] = ranked;
    j["batch_count"] = result.batch_count;
    j["provider"] = result.provider_id;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << result.answer << "\n\nCited incidents:\n";
  for (const auto& k : result.cited) {
    const auto* r = kb.store.find(k);
    out << "  " << k.to_string() << (r ? "  " + r->attack_name : std::string()) << "\n";
  }
  out << "\nRetrieval:\n";
  for (const auto& s : result.retrieved) {
    out << "  #" << s.rank << " chunk " << s.chunk_id << std::fixed << std::setprecision(4)
        << "  dense " << s.dense << "  sparse " << s.sparse << "  hybrid " << s.hybrid << "\n";
  }
  return 0;
}

int do_evaluate(const std::string& index_dir, const std::string& testset_path, const std::string& out_path,
                const std::string& plot_path, const std::string& system, const RetrievalFlags& flags,
                const Common& common, std::ostream& out) {
  const AppConfig cfg = common.config();
  const auto items = load_testset(testset_path);
  MetricReport report;
  if (system == "echo") {
    report = run_eval(items, [](const TestItem& t) { return t.reference; });
  } else if (system == "empty") {
    report = run_eval(items, [](const TestItem&) { return std::string(); });
  } else if (system == "rag") {
    const AnswerConfig answer_cfg = flags.apply(cfg.answer);
    const KnowledgeBase kb = load_knowledge_base(index_dir);
    auto providers = providers_from_env(common.stub_llm, cfg.embedding_dimension);
    report = run_eval(items, [&](const TestItem& t) {
      return generate_answer(t.question, answer_cfg, kb, *providers.embedder, *providers.generator).answer;
    });
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown system '" + system + "'");
  }
  io::write_file(out_path, report.to_csv());
  if (!plot_path.empty()) io::write_file(plot_path, report.to_json().dump(2) + "\n");
  auto summary = report.to_json();
  summary.erase("series");
  print_report(out, summary);
  return 0;
}

int do_serve(const std::string& index_dir, const std::string& bind, const std::string& static_dir,
             const RetrievalFlags& flags, const Common& common, std::ostream& err) {
  const AppConfig cfg = common.config();
  const AnswerConfig answer_cfg = flags.apply(cfg.answer);
  auto kb = std::make_shared<const KnowledgeBase>(load_knowledge_base(index_dir));
  auto providers = providers_from_env(common.stub_llm, cfg.embedding_dimension);
  const Service service(kb, std::shared_ptr<EmbeddingProvider>(std::move(providers.embedder)),
                        std::shared_ptr<GenerationProvider>(std::move(providers.generator)), answer_cfg,
                        read_manifest(index_dir));
  std::string address = cfg.bind;
  if (const char* env = std::getenv("BIND_ADDR"); env && *env) address = env;
  if (!bind.empty()) address = bind;
  ServerOptions options = parse_bind_address(address);
  options.static_dir = static_dir.empty() ? cfg.static_dir : static_dir;
  HttpServer server(service, options);
  const int port = server.bind();
  err << "listening on " << options.host << ":" << port << std::endl;
  server.listen();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Question answering over transportation cyber-incident records", "incidentqa"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "Settings document (JSON)")->check(CLI::ExistingFile);
  app.add_flag("--stub-llm", common.stub_llm, "Use the deterministic offline generator");
  app.fallthrough();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Normalize a source into a record store");
  ingest_cmd->add_option("--source", ingest.source, "Source file")->required();
  ingest_cmd->add_option("--adapter", ingest.adapter, "delimited, text or llm")
      ->check(CLI::IsMember({"delimited", "text", "llm"}));
  ingest_cmd->add_option("--map", ingest.map, "Field map (JSON)");
  ingest_cmd->add_option("--out", ingest.out, "Output store")->required();
  ingest_cmd->add_option("--source-id", ingest.source_id, "Source dataset name (default: file stem)");

  std::vector<std::string> merge_in;
  std::string merge_out;
  auto* merge_cmd = app.add_subcommand("merge", "Merge stores and flag cross-source duplicates");
  merge_cmd->add_option("--store", merge_in, "Input store (repeatable)")->required();
  merge_cmd->add_option("--out", merge_out, "Output store")->required();

  std::string cls_store, cls_engine = "rules", cls_out;
  auto* classify_cmd = app.add_subcommand("classify", "Label records with a transportation mode");
  classify_cmd->add_option("--store", cls_store, "Input store")->required();
  classify_cmd->add_option("--engine", cls_engine, "llm or rules")->check(CLI::IsMember({"llm", "rules"}));
  classify_cmd->add_option("--out", cls_out, "Verdicts file (CSV)")->required();

  std::string flt_store, flt_verdicts, flt_out;
  std::vector<std::string> flt_transport_only;
  auto* filter_cmd = app.add_subcommand("filter", "Keep transportation-related records");
  filter_cmd->add_option("--store", flt_store, "Input store")->required();
  filter_cmd->add_option("--verdicts", flt_verdicts, "Verdicts file")->required();
  filter_cmd->add_option("--out", flt_out, "Output store")->required();
  filter_cmd->add_option("--transport-only", flt_transport_only, "Source whose labeled records bypass the filter");

  std::string smp_store, smp_out;
  std::uint64_t smp_seed = 0;
  std::size_t smp_per_cell = 5;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a seeded evaluation sample");
  sample_cmd->add_option("--store", smp_store, "Input store")->required();
  sample_cmd->add_option("--seed", smp_seed, "Generator seed")->required();
  sample_cmd->add_option("--per-cell", smp_per_cell, "Records per (source, label) cell");
  sample_cmd->add_option("--out", smp_out, "Output store")->required();

  std::string idx_store, idx_out;
  std::size_t idx_size = kDefaultChunkSize, idx_overlap = kDefaultChunkOverlap;
  auto* index_cmd = app.add_subcommand("index", "Chunk and index a store");
  index_cmd->add_option("--store", idx_store, "Input store")->required();
  index_cmd->add_option("--out", idx_out, "Index directory")->required();
  auto* size_opt = index_cmd->add_option("--chunk-size", idx_size, "Tokens per chunk");
  auto* overlap_opt = index_cmd->add_option("--overlap", idx_overlap, "Tokens shared by adjacent chunks");

  std::string q_index, q_question;
  bool q_json = false;
  RetrievalFlags q_flags;
  auto* query_cmd = app.add_subcommand("query", "Answer a question from an index");
  query_cmd->add_option("--index", q_index, "Index directory")->required();
  query_cmd->add_option("question", q_question, "Question")->required();
  query_cmd->add_flag("--json", q_json, "Print the result as JSON");
  q_flags.add_to(query_cmd);

  std::string ev_index, ev_testset, ev_out, ev_plot, ev_system = "rag";
  RetrievalFlags ev_flags;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score answers against a test set");
  eval_cmd->add_option("--index", ev_index, "Index directory");
  eval_cmd->add_option("--testset", ev_testset, "Test set (CSV or JSON)")->required();
  eval_cmd->add_option("--out", ev_out, "Per-item report (CSV)")->required();
  eval_cmd->add_option("--plot", ev_plot, "Plot-ready series (JSON)");
  eval_cmd->add_option("--system", ev_system, "rag, echo or empty")
      ->check(CLI::IsMember({"rag", "echo", "empty"}));
  ev_flags.add_to(eval_cmd);

  std::string srv_index, srv_bind, srv_static;
  RetrievalFlags srv_flags;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--index", srv_index, "Index directory")->required();
  serve_cmd->add_option("--bind", srv_bind, "host:port (default BIND_ADDR or 127.0.0.1:8080)");
  serve_cmd->add_option("--static", srv_static, "Directory served at /");
  srv_flags.add_to(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*ingest_cmd) return do_ingest(ingest, common, out);
    if (*merge_cmd) return do_merge(merge_in, merge_out, out);
    if (*classify_cmd) return do_classify(cls_store, cls_engine, cls_out, common, out);
    if (*filter_cmd) return do_filter(flt_store, flt_verdicts, flt_out, flt_transport_only, common, out);
    if (*sample_cmd) return do_sample(smp_store, smp_seed, smp_per_cell, smp_out, out);
    if (*index_cmd) {
      return do_index(idx_store, idx_out, idx_size, idx_overlap, size_opt->count() > 0,
                      overlap_opt->count() > 0, common, out);
    }
    if (*query_cmd) return do_query(q_index, q_question, q_flags, q_json, common, out);
    if (*eval_cmd) {
      if (ev_system == "rag" && ev_index.empty()) {
        throw Error(ErrorCode::InvalidArgument, "--index is required for the rag system");
      }
      return do_evaluate(ev_index, ev_testset, ev_out, ev_plot, ev_system, ev_flags, common, out);
    }
    if (*serve_cmd) return do_serve(srv_index, srv_bind, srv_static, srv_flags, common, err);
  } catch (const Error& e) {
    err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code(error_family(e.code()));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace incidentqa::cli
