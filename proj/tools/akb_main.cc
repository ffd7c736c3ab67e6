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

// akb: mine a knowledge base, query it, serve it over HTTP.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "activitykb/aggregate.h"
#include "activitykb/corpus.h"
#include "activitykb/errors.h"
#include "activitykb/knowledge_base.h"
#include "activitykb/mae.h"
#include "activitykb/pipeline.h"
#include "activitykb/service.h"
#include "activitykb/synthetic.h"
#include "activitykb/tc_lang.h"
#include "activitykb/url.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

constexpr const char* kKbEnv = "ACTIVITYKB_KB";

// Thrown for argument problems that the option parser cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string DefaultKbPath() {
  const char* env = std::getenv(kKbEnv);
  return env == nullptr ? "" : env;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw akb::Error(akb::ErrorCode::kIo, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string RequireKbPath(const std::string& flag) {
  std::string path = flag.empty() ? DefaultKbPath() : flag;
  if (path.empty()) throw UsageError(std::string("--kb is required (or set ") + kKbEnv + ")");
  return path;
}

struct MineArgs {
  std::string corpus;
  std::string out;
  akb::MineConfig config;
};

int RunMine(const MineArgs& args) {
  akb::MineResult result = akb::Mine(args.corpus, args.config);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
  akb::SaveKnowledgeBase(result.kb, args.out);
  const akb::KnowledgeBase& kb = result.kb;
  std::cerr << "mined " << kb.meta.corpus_size << " tokens in " << kb.meta.total_docs
            << " documents: " << kb.activity_object.counts.pair_counts.size()
            << " object-activity, " << kb.object_affordance.counts.pair_counts.size()
            << " object-affordance, " << kb.activity_activity.counts.pair_counts.size()
            << " activity-activity pairs -> " << args.out << "\n";
  return kExitOk;
}

struct QueryArgs {
  std::string kb;
  std::string endpoint;
  std::vector<std::string> terms;
  std::string target;
  std::size_t top_k = akb::kDefaultTopK;
  double threshold = akb::kDefaultFireThreshold;
};

int RunQuery(const QueryArgs& args) {
  akb::ApiQuery query;
  for (const std::string& arg : args.terms) {
    std::size_t begin = 0;
    while (begin <= arg.size()) {
      std::size_t end = std::min(arg.find('+', begin), arg.size());
      std::string term = akb::NormalizeLabel(arg.substr(begin, end - begin));
      if (!term.empty()) query.terms.push_back(std::move(term));
      begin = end + 1;
    }
  }
  if (query.terms.empty()) throw UsageError("no query terms");
  if (!args.target.empty()) {
    query.target = akb::NormalizeLabel(args.target);
    if (query.target->empty()) throw UsageError("empty --target");
  }
  query.top_k = args.top_k;
  std::string path = RequireKbPath(args.kb);
  auto models = akb::BuildModels(akb::LoadKnowledgeBase(path));
  std::cout << akb::RenderAnswer(*models, *akb::ParseEndpoint(args.endpoint), query,
                                 args.threshold)
            << "\n";
  return kExitOk;
}

struct ServeArgs {
  std::string kb;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string stoplist;
  std::string vision_endpoint;
  akb::ServiceConfig config;
};

int RunServe(const ServeArgs& args) {
  std::shared_ptr<const akb::ServiceModels> models;
  std::string path = args.kb.empty() ? DefaultKbPath() : args.kb;
  if (!path.empty()) {
    models = akb::BuildModels(akb::LoadKnowledgeBase(path));
  } else {
    std::cerr << "warning: no knowledge base; queries will answer 503\n";
  }
  akb::ServiceConfig config = args.config;
  if (!args.stoplist.empty()) config.stoplist = akb::LoadStoplist(args.stoplist);
  std::unique_ptr<akb::VisionClient> vision;
  if (!args.vision_endpoint.empty()) {
    vision = std::make_unique<akb::HttpVisionClient>(args.vision_endpoint);
  }
  akb::Service service(models, config, std::move(vision));
  akb::HttpServer server(service);
  int port = server.Bind(args.host, args.port);
  std::cout << "listening on http://" << args.host << ":" << port << std::endl;
  server.Listen();
  return kExitOk;
}

struct MaeArgs {
  std::string predicted;
  std::string reference;
};

int RunMae(const MaeArgs& args) {
  double mae = akb::ComputeMae(akb::LoadDistribution(args.predicted),
                               akb::LoadDistribution(args.reference));
  std::cout << nlohmann::json{{"mae", mae}}.dump() << "\n";
  return kExitOk;
}

struct GenArgs {
  std::string out;
  std::string spec;
  std::uint64_t scale = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_ratio;
  bool print_spec = false;
};

int RunGen(const GenArgs& args) {
  akb::SyntheticSpec spec =
      args.spec.empty() ? akb::DefaultSyntheticSpec() : akb::LoadSyntheticSpec(args.spec);
  spec = akb::ScaleSpec(spec, args.scale);
  if (args.seed) spec.seed = *args.seed;
  if (args.noise_ratio) spec.noise_ratio = *args.noise_ratio;
  if (args.print_spec) {
    std::cout << akb::SyntheticSpecToJson(spec) << "\n";
    return kExitOk;
  }
  if (args.out.empty()) throw UsageError("--out is required");
  akb::SyntheticStats stats = akb::GenerateSyntheticCorpus(spec, args.out);
  std::cerr << "wrote " << stats.tokens << " tokens (" << stats.planted_tokens << " planted) in "
            << stats.docs << " documents, " << stats.files << " files -> " << args.out << "\n";
  return kExitOk;
}

struct RunArgs {
  std::string script;
  std::string corpus;
  double k = 10.0;
  std::uint64_t min_count = 1;
};

// Prints a pipeline result as tab-separated lines, highest values first.
void PrintResult(const akb::PipelineResult& result) {
  struct Line {
    std::string key;
    double value;
  };
  std::vector<Line> lines;
  if (const auto* freq = std::get_if<akb::FreqTable>(&result)) {
    for (const auto& [label, n] : freq->counts) lines.push_back({label, double(n)});
  } else if (const auto* pairs = std::get_if<akb::PairTable>(&result)) {
    for (const auto& [p, n] : pairs->pair_counts) lines.push_back({p.first + "\t" + p.second, double(n)});
  } else {
    for (const auto& [p, v] : std::get<akb::MiTable>(result).values) {
      lines.push_back({p.first + "\t" + p.second, v});
    }
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const Line& a, const Line& b) { return a.value > b.value; });
  for (const Line& l : lines) std::cout << l.key << "\t" << l.value << "\n";
}

int RunScript(const RunArgs& args) {
  auto program = std::make_shared<const akb::tc::CheckedProgram>(
      akb::tc::ParseAndCheck(ReadFile(args.script)));
  akb::PipelineRunner runner(program);
  for (const std::string& w : runner.warnings()) std::cerr << "warning: " << w << "\n";
  akb::CorpusReader reader(args.corpus);
  for (akb::Document doc; reader.Next(doc);) runner.ProcessDocument(doc);
  PrintResult(akb::FinishPipeline(*program, runner.counts(), args.k, args.min_count));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"activitykb: mine, query and serve a commonsense activity knowledge base"};
  app.require_subcommand(1);
  std::function<int()> action;

  MineArgs mine;
  CLI::App* mine_cmd = app.add_subcommand("mine", "Mine a knowledge base from a TSV corpus");
  mine_cmd->add_option("--corpus", mine.corpus, "Corpus file or directory")->required();
  mine_cmd->add_option("--out", mine.out, "Knowledge base file to write")->required();
  mine_cmd->add_option("--span", mine.config.span, "Co-occurrence window in tokens")
      ->check(CLI::PositiveNumber);
  mine_cmd->add_option("--k", mine.config.k, "MI smoothing constant")->check(CLI::NonNegativeNumber);
  mine_cmd->add_option("--min-count", mine.config.min_count, "Pruning floor");
  mine_cmd->add_option("--shards", mine.config.shards, "Worker threads")->check(CLI::Range(1, 256));
  mine_cmd->add_option("--built-at", mine.config.built_at, "Override meta.built_at");
  mine_cmd->callback([&] { action = [&] { return RunMine(mine); }; });

  QueryArgs query;
  CLI::App* query_cmd = app.add_subcommand("query", "Query a knowledge base");
  query_cmd->add_option("--kb", query.kb, std::string("Knowledge base (default $") + kKbEnv + ")");
  query_cmd->add_option("endpoint", query.endpoint, "detect | affordance | predict")
      ->required()
      ->check(CLI::IsMember({"detect", "affordance", "predict"}));
  query_cmd->add_option("terms", query.terms, "Query terms; '+' also separates terms")->required();
  query_cmd->add_option("--target", query.target, "Score one label instead of ranking");
  query_cmd->add_option("--top-k", query.top_k, "Number of results")->check(CLI::PositiveNumber);
  query_cmd->add_option("--threshold", query.threshold, "Fire threshold for --target");
  query_cmd->callback([&] { action = [&] { return RunQuery(query); }; });

  ServeArgs serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--kb", serve.kb, std::string("Knowledge base (default $") + kKbEnv + ")");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Port; 0 picks a free one")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--stoplist", serve.stoplist, "Labels to drop from POST /detect");
  serve_cmd->add_option("--vision-endpoint", serve.vision_endpoint, "http:// vision classifier");
  serve_cmd->add_option("--threshold", serve.config.threshold, "Fire threshold for ?target=");
  serve_cmd->add_option("--min-confidence", serve.config.min_confidence,
                        "Ignore vision labels below this confidence");
  serve_cmd->callback([&] { action = [&] { return RunServe(serve); }; });

  MaeArgs mae;
  CLI::App* mae_cmd = app.add_subcommand("eval-mae", "Mean absolute error of two distributions");
  mae_cmd->add_option("--predicted", mae.predicted, "JSON label -> percentage")->required();
  mae_cmd->add_option("--reference", mae.reference, "JSON label -> percentage")->required();
  mae_cmd->callback([&] { action = [&] { return RunMae(mae); }; });

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-corpus", "Write a planted synthetic corpus");
  gen_cmd->add_option("--out", gen.out, "Output directory");
  gen_cmd->add_option("--spec", gen.spec, "JSON spec (default: built-in)");
  gen_cmd->add_option("--scale", gen.scale, "Multiply every template count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--noise-ratio", gen.noise_ratio, "Distractor tokens per planted token")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_flag("--print-spec", gen.print_spec, "Print the effective spec and exit");
  gen_cmd->callback([&] { action = [&] { return RunGen(gen); }; });

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a TC script over a corpus");
  run_cmd->add_option("--script", run.script, "TC script")->required();
  run_cmd->add_option("--corpus", run.corpus, "Corpus file or directory")->required();
  run_cmd->add_option("--k", run.k, "MI smoothing constant");
  run_cmd->add_option("--min-count", run.min_count, "Pruning floor");
  run_cmd->callback([&] { action = [&] { return RunScript(run); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const akb::Error& e) {
    std::cerr << akb::RenderError(e.code(), e.what()) << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << akb::RenderError(akb::ErrorCode::kIo, e.what()) << "\n";
    return kExitData;
  }
}
