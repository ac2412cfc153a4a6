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

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <zlib.h>

#include "incidentqa/error.hpp"
#include "incidentqa/index.hpp"
#include "incidentqa/io.hpp"
#include "incidentqa/tokenize.hpp"

namespace incidentqa {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kPostingsMagic[4] = {'I', 'Q', 'P', 'S'};
constexpr char kVectorsMagic[4] = {'I', 'Q', 'V', 'S'};
constexpr const char* kFormatName = "incidentqa-index";
constexpr const char* kDataFiles[] = {"postings.bin", "vectors.bin", "chunks.json", "store.json"};

class Writer {
 public:
  void magic(const char (&m)[4]) { buf_.append(m, 4); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f32(float f) { u32(std::bit_cast<std::uint32_t>(f)); }
  void bytes(std::string_view s) { buf_.append(s); }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string_view data, std::string name) : data_(data), name_(std::move(name)) {}

  void magic(const char (&m)[4]) {
    if (take(4) != std::string_view(m, 4)) corrupt("bad magic");
  }
  std::uint32_t u32() {
    const auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string_view take(std::size_t n) {
    if (n > data_.size() - pos_) corrupt("truncated");
    const auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  void finish() {
    if (pos_ != data_.size()) corrupt("trailing bytes");
  }
  [[noreturn]] void corrupt(const std::string& what) const {
    throw Error(ErrorCode::ChecksumMismatch, name_ + ": " + what);
  }

 private:
  std::string_view data_;
  std::string name_;
  std::size_t pos_ = 0;
};

std::string crc_hex(std::string_view data, std::uint32_t seed = 0) {
  uLong crc = crc32(seed, nullptr, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string encode_postings(const SparseIndex& sparse) {
  Writer w;
  w.magic(kPostingsMagic);
  w.u32(kIndexFormatVersion);
  w.u32(static_cast<std::uint32_t>(sparse.num_chunks()));
  std::vector<const std::string*> terms;
  terms.reserve(sparse.terms().size());
  for (const auto& [term, list] : sparse.terms()) terms.push_back(&term);
  std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) { return *a < *b; });
  w.u32(static_cast<std::uint32_t>(terms.size()));
  for (const auto len : sparse.chunk_lengths()) w.u32(len);
  for (const auto* term : terms) {
    w.u32(static_cast<std::uint32_t>(term->size()));
    w.bytes(*term);
    const auto& list = sparse.terms().at(*term);
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& p : list) {
      w.u32(p.chunk_id);
      w.u32(p.term_frequency);
    }
  }
  return w.take();
}

SparseIndex decode_postings(std::string_view data) {
  Reader r(data, "postings.bin");
  r.magic(kPostingsMagic);
  const auto version = r.u32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::IncompatibleVersion, "postings.bin version " + std::to_string(version));
  }
  const auto n = r.u32();
  const auto num_terms = r.u32();
  std::vector<std::uint32_t> lengths;
  for (std::uint32_t i = 0; i < n; ++i) lengths.push_back(r.u32());
  std::unordered_map<std::string, std::vector<Posting>> postings;
  postings.reserve(num_terms);
  for (std::uint32_t t = 0; t < num_terms; ++t) {
    std::string term(r.take(r.u32()));
    const auto count = r.u32();
    std::vector<Posting> list;
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto id = r.u32();
      const auto tf = r.u32();
      if (id >= n || (!list.empty() && list.back().chunk_id >= id)) r.corrupt("posting order");
      list.push_back({id, tf});
    }
    postings.emplace(std::move(term), std::move(list));
  }
  r.finish();
  return SparseIndex::from_parts(std::move(lengths), std::move(postings));
}

std::string encode_vectors(const VectorIndex& dense) {
  Writer w;
  w.magic(kVectorsMagic);
  w.u32(kIndexFormatVersion);
  w.u32(static_cast<std::uint32_t>(dense.size()));
  w.u32(static_cast<std::uint32_t>(dense.dimension()));
  for (const float f : dense.data()) w.f32(f);
  return w.take();
}

VectorIndex decode_vectors(std::string_view data, const std::string& provider_id) {
  Reader r(data, "vectors.bin");
  r.magic(kVectorsMagic);
  const auto version = r.u32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::IncompatibleVersion, "vectors.bin version " + std::to_string(version));
  }
  const auto n = r.u32();
  const auto dim = r.u32();
  if (dim == 0) r.corrupt("zero dimension");
  if (static_cast<std::uint64_t>(n) * dim * 4 != data.size() - 16) r.corrupt("size mismatch");
  std::vector<float> values(static_cast<std::size_t>(n) * dim);
  for (auto& v : values) v = r.f32();
  r.finish();
  return VectorIndex(provider_id, dim, std::move(values));
}

std::string encode_chunks(const std::vector<Chunk>& chunks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : chunks) {
    ordered_json keys = ordered_json::array();
    for (const auto& k : c.record_keys) keys.push_back(k.to_string());
    arr.push_back({{"chunk_id", c.chunk_id},
                   {"record_keys", keys},
                   {"text", c.text},
                   {"token_count", c.token_count},
                   {"start_token", c.start_token}});
  }
  return arr.dump(1, ' ', false, json::error_handler_t::replace) + "\n";
}

std::vector<Chunk> decode_chunks(std::string_view data) {
  std::vector<Chunk> chunks;
  try {
    const json arr = json::parse(data);
    for (const auto& e : arr) {
      Chunk c;
      c.chunk_id = e.at("chunk_id").get<std::uint32_t>();
      for (const auto& k : e.at("record_keys")) c.record_keys.push_back(RecordKey::parse(k.get<std::string>()));
      c.text = e.at("text").get<std::string>();
      c.token_count = e.at("token_count").get<std::size_t>();
      c.start_token = e.at("start_token").get<std::size_t>();
      chunks.push_back(std::move(c));
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ChecksumMismatch, std::string("chunks.json: ") + ex.what());
  }
  return chunks;
}

json parse_manifest_doc(const std::string& dir) {
  const fs::path path = fs::path(dir) / "manifest.json";
  if (!fs::exists(path)) {
    throw Error(ErrorCode::StorageFailure, "no index manifest at " + path.string());
  }
  const std::string text = io::read_file(path.string());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ChecksumMismatch, std::string("manifest.json: ") + ex.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kFormatName || !doc.contains("version")) {
    throw Error(ErrorCode::IncompatibleVersion, "manifest.json is not an incidentqa index manifest");
  }
  const auto version = doc.at("version").get<std::uint32_t>();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::IncompatibleVersion, "index format version " + std::to_string(version) +
                                                    " is not supported (expected " +
                                                    std::to_string(kIndexFormatVersion) + ")");
  }
  return doc;
}

}  // namespace

void save_knowledge_base(const KnowledgeBase& kb, const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> files = {
      {"postings.bin", encode_postings(kb.sparse)},
      {"vectors.bin", encode_vectors(kb.dense)},
      {"chunks.json", encode_chunks(kb.chunks)},
      {"store.json", serialize_store(kb.store)},
  };
  ordered_json manifest;
  manifest["format"] = kFormatName;
  manifest["version"] = kIndexFormatVersion;
  manifest["tokenizer"] = kTokenizerId;
  manifest["embedding_provider"] = kb.dense.provider_id();
  manifest["dimension"] = kb.dense.dimension();
  manifest["num_chunks"] = kb.chunks.size();
  manifest["avgcl"] = kb.sparse.average_chunk_length();
  manifest["chunk_size"] = kb.chunk_size;
  manifest["chunk_overlap"] = kb.chunk_overlap;
  ordered_json entries = ordered_json::object();
  std::string all_crcs;
  for (const auto& [name, bytes] : files) {
    const auto crc = crc_hex(bytes);
    entries[name] = {{"bytes", bytes.size()}, {"crc32", crc}};
    all_crcs += crc;
  }
  manifest["files"] = entries;
  manifest["checksum"] = crc_hex(all_crcs);

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "cannot create " + dir + ": " + ec.message());
  for (const auto& [name, bytes] : files) io::write_file((fs::path(dir) / name).string(), bytes);
  io::write_file((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

IndexManifest read_manifest(const std::string& dir) {
  const json doc = parse_manifest_doc(dir);
  try {
    IndexManifest m;
    m.version = doc.at("version").get<std::uint32_t>();
    m.tokenizer = doc.at("tokenizer").get<std::string>();
    m.embedding_provider = doc.at("embedding_provider").get<std::string>();
    m.dimension = doc.at("dimension").get<std::size_t>();
    m.num_chunks = doc.at("num_chunks").get<std::size_t>();
    m.avgcl = doc.at("avgcl").get<double>();
    m.chunk_size = doc.at("chunk_size").get<std::size_t>();
    m.chunk_overlap = doc.at("chunk_overlap").get<std::size_t>();
    m.checksum = doc.at("checksum").get<std::string>();
    return m;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ChecksumMismatch, std::string("manifest.json: ") + ex.what());
  }
}

KnowledgeBase load_knowledge_base(const std::string& dir) {
  const IndexManifest manifest = read_manifest(dir);
  if (manifest.tokenizer != kTokenizerId) {
    throw Error(ErrorCode::IncompatibleVersion,
                "index was built with tokenizer " + manifest.tokenizer + ", this build uses " +
                    std::string(kTokenizerId));
  }
  const json doc = parse_manifest_doc(dir);
  std::unordered_map<std::string, std::string> contents;
  std::string all_crcs;
  for (const char* name : kDataFiles) {
    const fs::path path = fs::path(dir) / name;
    if (!fs::exists(path)) throw Error(ErrorCode::StorageFailure, "missing index file " + path.string());
    std::string bytes = io::read_file(path.string());
    const auto crc = crc_hex(bytes);
    const auto& entry = doc.at("files").value(name, json::object());
    if (entry.value("bytes", std::uint64_t{0}) != bytes.size() || entry.value("crc32", "") != crc) {
      throw Error(ErrorCode::ChecksumMismatch, std::string(name) + " does not match its manifest checksum");
    }
    all_crcs += crc;
    contents.emplace(name, std::move(bytes));
  }
  if (crc_hex(all_crcs) != manifest.checksum) {
    throw Error(ErrorCode::ChecksumMismatch, "manifest checksum does not match its file entries");
  }

  KnowledgeBase kb;
  kb.sparse = decode_postings(contents.at("postings.bin"));
  kb.dense = decode_vectors(contents.at("vectors.bin"), manifest.embedding_provider);
  kb.chunks = decode_chunks(contents.at("chunks.json"));
  try {
    kb.store = parse_store(contents.at("store.json"));
  } catch (const Error& e) {
    throw Error(ErrorCode::ChecksumMismatch, std::string("store.json: ") + e.what());
  }
  kb.chunk_size = manifest.chunk_size;
  kb.chunk_overlap = manifest.chunk_overlap;
  if (kb.chunks.size() != manifest.num_chunks || kb.sparse.num_chunks() != manifest.num_chunks ||
      kb.dense.size() != manifest.num_chunks || kb.dense.dimension() != manifest.dimension) {
    throw Error(ErrorCode::ChecksumMismatch, "index files disagree on chunk count or dimension");
  }
  for (std::size_t i = 0; i < kb.chunks.size(); ++i) {
    if (kb.chunks[i].chunk_id != i) throw Error(ErrorCode::ChecksumMismatch, "chunk ids out of order");
  }
  return kb;
}

}  // namespace incidentqa
