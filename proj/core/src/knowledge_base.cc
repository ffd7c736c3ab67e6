// Copyright 2026 The activitykb Authors.
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

#include "activitykb/knowledge_base.h"

#include <zlib.h>

#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <ctime>
#include <deque>
#include <exception>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "activitykb/errors.h"
#include "activitykb/pipeline.h"
#include "activitykb/tc_lang.h"

namespace akb {

namespace scripts {

const std::string_view kActivityObjectTemplate =
    R"(# Objects that appear near human activities.
human_pronoun = "he" | "she" | "i" | "we" | "they"
obj = [DET]- ([ADJ]- [NOUN])+
np = [DET]? ([ADJ]- [NOUN])+
activity = human_pronoun- ([VERB] [ADP]?)+ obj?
MI(freq(co-occur(np, activity, {span})))
)";

const std::string_view kObjectAffordanceTemplate =
    R"(# Actions objects take part in, as subject or direct object.
np = [DET]? ([ADJ]- [NOUN])+
vp = ([VERB] [ADP]?)+
svo = np vp np?
MI(freq(svo))
)";

const std::string_view kActivityActivityTemplate =
    R"(# Activities that follow one another.
human_pronoun = "he" | "she" | "i" | "we" | "they"
obj = [DET]- ([ADJ]- [NOUN])+
activity = human_pronoun- ([VERB] [ADP]?)+ obj?
MI(freq(skip-gram(activity, 2, {span})))
)";

std::string Instantiate(std::string_view script_template, int span) {
  std::string out(script_template);
  const std::string key = "{span}";
  for (std::size_t at = out.find(key); at != std::string::npos; at = out.find(key)) {
    out.replace(at, key.size(), std::to_string(span));
  }
  return out;
}

}  // namespace scripts

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kMagic = "ACTIVITYKB";
constexpr std::string_view kChecksumPrefix = "CRC32 ";

std::string Crc32Hex(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string FormatUtc(std::chrono::system_clock::time_point tp) {
  std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string LatestMtime(const std::filesystem::path& corpus) {
  std::filesystem::file_time_type latest{};
  bool any = false;
  std::error_code ec;
  for (const std::filesystem::path& file : CorpusReader::ListFiles(corpus)) {
    auto t = std::filesystem::last_write_time(file, ec);
    if (ec) continue;
    if (!any || t > latest) latest = t;
    any = true;
  }
  if (!any) return "1970-01-01T00:00:00Z";
  return FormatUtc(std::chrono::time_point_cast<std::chrono::system_clock::duration>(
      std::chrono::file_clock::to_sys(latest)));
}

template <typename T>
class BoundedQueue {
 public:
  explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

  void Push(T item) {
    std::unique_lock<std::mutex> lock(mu_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
    if (closed_) return;
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  bool Pop(T& item) {
    std::unique_lock<std::mutex> lock(mu_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return false;
    item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return true;
  }

  void Close() {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<T> items_;
  std::size_t capacity_;
  bool closed_ = false;
};

struct Programs {
  std::shared_ptr<const tc::CheckedProgram> activity_object;
  std::shared_ptr<const tc::CheckedProgram> object_affordance;
  std::shared_ptr<const tc::CheckedProgram> activity_activity;
  std::map<std::string, std::string> hashes;
};

Programs LoadPrograms(int span) {
  Programs programs;
  auto load = [&](std::string_view tmpl, const std::string& name) {
    std::string source = scripts::Instantiate(tmpl, span);
    programs.hashes[name] = Crc32Hex(source);
    return std::make_shared<const tc::CheckedProgram>(tc::ParseAndCheck(source));
  };
  programs.activity_object = load(scripts::kActivityObjectTemplate, "activity_object");
  programs.object_affordance =
      load(scripts::kObjectAffordanceTemplate, "object_affordance");
  programs.activity_activity =
      load(scripts::kActivityActivityTemplate, "activity_activity");
  return programs;
}

struct Shard {
  explicit Shard(const Programs& programs)
      : activity_object(programs.activity_object, {{"np"}}),
        object_affordance(programs.object_affordance, {{"np"}}),
        activity_activity(programs.activity_activity, {}) {}

  void Process(const Document& doc) {
    activity_object.ProcessDocument(doc);
    object_affordance.ProcessDocument(doc);
    activity_activity.ProcessDocument(doc);
    ++docs;
  }

  PipelineRunner activity_object;
  PipelineRunner object_affordance;
  PipelineRunner activity_activity;
  std::uint64_t docs = 0;
};

FreqTable PrunedFreq(const std::map<std::string, std::uint64_t>& counts,
                     std::uint64_t min_count) {
  FreqTable table;
  for (const auto& [label, count] : counts) {
    if (count >= min_count) table.Add(label, count);
  }
  return table;
}

StatTable BuildStat(const PairTable& counts, const MineConfig& config) {
  StatTable stat;
  stat.counts = Prune(counts, config.min_count, config.min_count);
  if (stat.counts.corpus_size > 0) stat.mi = Mi(stat.counts, config.k);
  return stat;
}

using DocumentSource = std::function<bool(Document&)>;

MineResult RunMine(const DocumentSource& next, const MineConfig& config,
                   const std::string& built_at) {
  if (config.span < 1) throw Error(ErrorCode::kInvalidArgument, "span must be >= 1");
  if (config.k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
  if (config.shards < 1) throw Error(ErrorCode::kInvalidArgument, "shards must be >= 1");
  Programs programs = LoadPrograms(config.span);
  const auto shard_count = static_cast<std::size_t>(config.shards);
  std::vector<std::unique_ptr<Shard>> shards;
  for (std::size_t i = 0; i < shard_count; ++i) {
    shards.push_back(std::make_unique<Shard>(programs));
  }

  MineResult result;
  bool empty_corpus = false;
  try {
    if (shard_count == 1) {
      Document doc;
      while (next(doc)) shards[0]->Process(doc);
    } else {
      std::vector<std::unique_ptr<BoundedQueue<Document>>> queues;
      std::vector<std::exception_ptr> failures(shard_count);
      std::vector<std::thread> workers;
      for (std::size_t i = 0; i < shard_count; ++i) {
        queues.push_back(std::make_unique<BoundedQueue<Document>>(32));
      }
      for (std::size_t i = 0; i < shard_count; ++i) {
        workers.emplace_back([&, i] {
          try {
            Document doc;
            while (queues[i]->Pop(doc)) shards[i]->Process(doc);
          } catch (...) {
            failures[i] = std::current_exception();
            queues[i]->Close();
          }
        });
      }
      std::exception_ptr reader_failure;
      try {
        Document doc;
        for (std::size_t n = 0; next(doc); ++n) {
          queues[n % shard_count]->Push(std::move(doc));
          doc = Document();
        }
      } catch (...) {
        reader_failure = std::current_exception();
      }
      for (auto& queue : queues) queue->Close();
      for (std::thread& worker : workers) worker.join();
      if (reader_failure) std::rethrow_exception(reader_failure);
      for (const std::exception_ptr& failure : failures) {
        if (failure) std::rethrow_exception(failure);
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyCorpus) throw;
    empty_corpus = true;
    result.warnings.push_back("empty corpus; knowledge base is empty");
  }

  PipelineCounts ao = shards[0]->activity_object.counts();
  PipelineCounts oa = shards[0]->object_affordance.counts();
  PipelineCounts aa = shards[0]->activity_activity.counts();
  std::uint64_t docs = shards[0]->docs;
  for (std::size_t i = 1; i < shard_count; ++i) {
    ao.MergeFrom(shards[i]->activity_object.counts());
    oa.MergeFrom(shards[i]->object_affordance.counts());
    aa.MergeFrom(shards[i]->activity_activity.counts());
    docs += shards[i]->docs;
  }

  KnowledgeBase& kb = result.kb;
  kb.meta.corpus_size = ao.corpus_size;
  kb.meta.total_docs = docs;
  kb.meta.span = config.span;
  kb.meta.k = config.k;
  kb.meta.min_count = config.min_count;
  kb.meta.built_at = built_at;
  kb.meta.script_hashes = programs.hashes;
  kb.activity_object = BuildStat(ao.pair_table, config);
  kb.object_affordance = BuildStat(oa.pair_table, config);
  kb.activity_activity = BuildStat(aa.pair_table, config);
  kb.activity_freq = PrunedFreq(aa.pair_table.marginals_a, config.min_count);
  kb.object_freq = PrunedFreq(ao.pair_table.marginals_a, config.min_count);
  if (!empty_corpus && kb.empty()) {
    result.warnings.push_back("no pattern matches; knowledge base is empty");
  }
  return result;
}

// --- serialization ---------------------------------------------------------

Json FreqJson(const FreqTable& table) {
  Json labels = Json::array();
  Json counts = Json::array();
  for (const auto& [label, count] : table.counts) {
    labels.push_back(label);
    counts.push_back(count);
  }
  return Json{{"labels", std::move(labels)}, {"counts", std::move(counts)}};
}

FreqTable FreqFromJson(const Json& j) {
  FreqTable table;
  const Json& labels = j.at("labels");
  const Json& counts = j.at("counts");
  if (labels.size() != counts.size()) {
    throw Error(ErrorCode::kParse, "frequency table arrays differ in length");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    table.Add(labels[i].get<std::string>(), counts[i].get<std::uint64_t>());
  }
  return table;
}

struct TableLayout {
  std::vector<std::string> rows;  // labelB vocabulary
  std::vector<std::string> dims;  // labelA vocabulary
};

Json TableHeader(const std::string& name, const StatTable& stat, TableLayout& layout) {
  Json rows = Json::array();
  Json row_marginals = Json::array();
  for (const auto& [label, count] : stat.counts.marginals_b) {
    layout.rows.push_back(label);
    rows.push_back(label);
    row_marginals.push_back(count);
  }
  Json dims = Json::array();
  Json dim_marginals = Json::array();
  for (const auto& [label, count] : stat.counts.marginals_a) {
    layout.dims.push_back(label);
    dims.push_back(label);
    dim_marginals.push_back(count);
  }
  return Json{
      {"name", name},
      {"span", stat.counts.span},
      {"ordered", stat.counts.ordered},
      {"corpus_size", stat.counts.corpus_size},
      {"pairs", stat.counts.pair_counts.size()},
      {"mi", Json{{"span", stat.mi.span},
                  {"ordered", stat.mi.ordered},
                  {"corpus_size", stat.mi.corpus_size},
                  {"k", stat.mi.k}}},
      {"rows", std::move(rows)},
      {"row_marginals", std::move(row_marginals)},
      {"dims", std::move(dims)},
      {"dim_marginals", std::move(dim_marginals)},
  };
}

void WriteRows(const std::string& name, const StatTable& stat, const TableLayout& layout,
               std::string& out) {
  std::map<std::string, std::size_t> row_index;
  std::map<std::string, std::size_t> dim_index;
  for (std::size_t i = 0; i < layout.rows.size(); ++i) row_index[layout.rows[i]] = i;
  for (std::size_t i = 0; i < layout.dims.size(); ++i) dim_index[layout.dims[i]] = i;
  std::vector<Json> entries(layout.rows.size(), Json::array());
  for (const auto& [pair, count] : stat.counts.pair_counts) {
    auto mi = stat.mi.values.find(pair);
    Json entry = Json::array({dim_index.at(pair.first), count});
    if (mi != stat.mi.values.end()) {
      entry.push_back(mi->second);
    } else {
      entry.push_back(nullptr);
    }
    entries[row_index.at(pair.second)].push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].empty()) continue;
    Json line{{"table", name}, {"row", i}, {"entries", std::move(entries[i])}};
    out += line.dump();
    out += '\n';
  }
}

const std::vector<std::pair<std::string, StatTable KnowledgeBase::*>>& TableMembers() {
  static const std::vector<std::pair<std::string, StatTable KnowledgeBase::*>> members = {
      {"activity_object", &KnowledgeBase::activity_object},
      {"object_affordance", &KnowledgeBase::object_affordance},
      {"activity_activity", &KnowledgeBase::activity_activity},
  };
  return members;
}

}  // namespace

bool KnowledgeBase::empty() const {
  return activity_object.counts.pair_counts.empty() &&
         object_affordance.counts.pair_counts.empty() &&
         activity_activity.counts.pair_counts.empty() && activity_freq.counts.empty() &&
         object_freq.counts.empty();
}

MineResult Mine(const std::filesystem::path& corpus, const MineConfig& config) {
  std::string built_at = config.built_at.empty() ? LatestMtime(corpus) : config.built_at;
  CorpusReader reader(corpus);
  MineResult result =
      RunMine([&reader](Document& doc) { return reader.Next(doc); }, config, built_at);
  if (reader.stats().unknown_pos_tags > 0) {
    result.warnings.push_back(std::to_string(reader.stats().unknown_pos_tags) +
                              " tokens had unknown part-of-speech tags (read as X)");
  }
  return result;
}

MineResult MineDocuments(const std::vector<Document>& docs, const MineConfig& config) {
  std::size_t next = 0;
  bool any_tokens = false;
  DocumentSource source = [&](Document& doc) {
    if (next == docs.size()) {
      if (!any_tokens) throw Error(ErrorCode::kEmptyCorpus, "empty corpus");
      return false;
    }
    doc = docs[next++];
    if (!doc.tokens.empty()) any_tokens = true;
    return true;
  };
  return RunMine(source, config,
                 config.built_at.empty() ? "1970-01-01T00:00:00Z" : config.built_at);
}

std::string SerializeKnowledgeBase(const KnowledgeBase& kb) {
  Json hashes = Json::object();
  for (const auto& [name, hash] : kb.meta.script_hashes) hashes[name] = hash;
  Json header{
      {"format", "activitykb"},
      {"version", kKbFormatVersion},
      {"meta", Json{{"corpus_size", kb.meta.corpus_size},
                    {"total_docs", kb.meta.total_docs},
                    {"span", kb.meta.span},
                    {"k", kb.meta.k},
                    {"min_count", kb.meta.min_count},
                    {"built_at", kb.meta.built_at},
                    {"script_hashes", std::move(hashes)}}},
      {"frequencies", Json{{"activity", FreqJson(kb.activity_freq)},
                           {"object", FreqJson(kb.object_freq)}}},
  };
  Json tables = Json::array();
  std::vector<TableLayout> layouts(TableMembers().size());
  for (std::size_t i = 0; i < TableMembers().size(); ++i) {
    const auto& [name, member] = TableMembers()[i];
    tables.push_back(TableHeader(name, kb.*member, layouts[i]));
  }
  header["tables"] = std::move(tables);

  std::string out;
  out += kMagic;
  out += ' ';
  out += std::to_string(kKbFormatVersion);
  out += '\n';
  out += header.dump();
  out += '\n';
  for (std::size_t i = 0; i < TableMembers().size(); ++i) {
    const auto& [name, member] = TableMembers()[i];
    WriteRows(name, kb.*member, layouts[i], out);
  }
  std::string crc = Crc32Hex(out);
  out += kChecksumPrefix;
  out += crc;
  out += '\n';
  return out;
}

void SaveKnowledgeBase(const KnowledgeBase& kb, const std::filesystem::path& path) {
  std::string bytes = SerializeKnowledgeBase(kb);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

KnowledgeBase DeserializeKnowledgeBase(std::string_view bytes) {
  std::size_t first_nl = bytes.find('\n');
  if (first_nl == std::string_view::npos ||
      bytes.substr(0, kMagic.size() + 1) != std::string(kMagic) + " ") {
    throw Error(ErrorCode::kParse, "not an activitykb knowledge base");
  }
  std::string_view version = bytes.substr(kMagic.size() + 1, first_nl - kMagic.size() - 1);
  if (version != std::to_string(kKbFormatVersion)) {
    throw Error(ErrorCode::kVersion, "unsupported knowledge base version " +
                                         std::string(version) + " (expected " +
                                         std::to_string(kKbFormatVersion) + ")");
  }
  // The checksum line is the last line and covers every byte before it.
  // A well-formed file ends with a newline; without it the tail may be cut.
  if (bytes.back() != '\n') {
    throw Error(ErrorCode::kChecksum, "knowledge base ends mid-line (truncated file?)");
  }
  std::string_view body = bytes.substr(0, bytes.size() - 1);
  std::size_t last_nl = body.rfind('\n');
  std::string_view last =
      last_nl == std::string_view::npos ? body : body.substr(last_nl + 1);
  if (last.substr(0, kChecksumPrefix.size()) != kChecksumPrefix) {
    throw Error(ErrorCode::kChecksum, "knowledge base checksum missing (truncated file?)");
  }
  std::string_view covered = bytes.substr(0, last_nl + 1);
  if (Crc32Hex(covered) != last.substr(kChecksumPrefix.size())) {
    throw Error(ErrorCode::kChecksum, "knowledge base checksum mismatch");
  }

  std::vector<std::string_view> lines;
  for (std::size_t begin = first_nl + 1; begin < covered.size();) {
    std::size_t end = covered.find('\n', begin);
    lines.push_back(covered.substr(begin, end - begin));
    begin = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::kParse, "knowledge base header missing");

  KnowledgeBase kb;
  try {
    Json header = Json::parse(lines.front());
    const Json& meta = header.at("meta");
    kb.meta.corpus_size = meta.at("corpus_size").get<std::uint64_t>();
    kb.meta.total_docs = meta.at("total_docs").get<std::uint64_t>();
    kb.meta.span = meta.at("span").get<int>();
    kb.meta.k = meta.at("k").get<double>();
    kb.meta.min_count = meta.at("min_count").get<std::uint64_t>();
    kb.meta.built_at = meta.at("built_at").get<std::string>();
    for (const auto& [name, hash] : meta.at("script_hashes").items()) {
      kb.meta.script_hashes[name] = hash.get<std::string>();
    }
    kb.activity_freq = FreqFromJson(header.at("frequencies").at("activity"));
    kb.object_freq = FreqFromJson(header.at("frequencies").at("object"));

    std::map<std::string, std::pair<StatTable*, TableLayout>> tables;
    for (const Json& t : header.at("tables")) {
      std::string name = t.at("name").get<std::string>();
      StatTable* stat = nullptr;
      for (const auto& [member_name, member] : TableMembers()) {
        if (member_name == name) stat = &(kb.*member);
      }
      if (stat == nullptr) throw Error(ErrorCode::kParse, "unknown table " + name);
      stat->counts = PairTable(t.at("span").get<int>(), t.at("ordered").get<bool>());
      stat->counts.corpus_size = t.at("corpus_size").get<std::uint64_t>();
      const Json& mi = t.at("mi");
      stat->mi.span = mi.at("span").get<int>();
      stat->mi.ordered = mi.at("ordered").get<bool>();
      stat->mi.corpus_size = mi.at("corpus_size").get<std::uint64_t>();
      stat->mi.k = mi.at("k").get<double>();
      TableLayout layout;
      const Json& rows = t.at("rows");
      const Json& row_marginals = t.at("row_marginals");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        layout.rows.push_back(rows[i].get<std::string>());
        stat->counts.marginals_b[layout.rows.back()] = row_marginals.at(i).get<std::uint64_t>();
      }
      const Json& dims = t.at("dims");
      const Json& dim_marginals = t.at("dim_marginals");
      for (std::size_t i = 0; i < dims.size(); ++i) {
        layout.dims.push_back(dims[i].get<std::string>());
        stat->counts.marginals_a[layout.dims.back()] = dim_marginals.at(i).get<std::uint64_t>();
      }
      tables[name] = {stat, std::move(layout)};
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
      Json line = Json::parse(lines[i]);
      auto& [stat, layout] = tables.at(line.at("table").get<std::string>());
      const std::string& row = layout.rows.at(line.at("row").get<std::size_t>());
      for (const Json& entry : line.at("entries")) {
        LabelPair pair(layout.dims.at(entry.at(0).get<std::size_t>()), row);
        stat->counts.pair_counts[pair] = entry.at(1).get<std::uint64_t>();
        if (!entry.at(2).is_null()) stat->mi.values[pair] = entry.at(2).get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed knowledge base: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw Error(ErrorCode::kParse, std::string("malformed knowledge base: ") + e.what());
  }
  return kb;
}

KnowledgeBase LoadKnowledgeBase(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open knowledge base " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return DeserializeKnowledgeBase(buffer.str());
}

}  // namespace akb
