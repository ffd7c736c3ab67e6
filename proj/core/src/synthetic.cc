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

#include "activitykb/synthetic.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "activitykb/errors.h"
#include "activitykb/knowledge_base.h"
#include "activitykb/tc_lang.h"
#include "activitykb/tc_runtime.h"

namespace akb {
namespace {

using Word = std::pair<std::string, PosTag>;

const std::set<std::string>& Adpositions() {
  static const std::set<std::string> kAdps = {
      "up", "down", "on", "off", "in", "into", "out", "at", "to", "for",
      "with", "over", "back", "away", "around", "through", "inside", "outside", "by"};
  return kAdps;
}

constexpr std::string_view kPronouns[] = {"he", "she", "i", "we", "they"};

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

// Portable bounded draw; std distributions differ across standard libraries.
std::uint64_t Draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::vector<std::string> PseudoWords(std::mt19937_64& rng, std::size_t count,
                                     std::set<std::string>& taken) {
  static constexpr std::string_view kOnsets = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::vector<std::string> words;
  while (words.size() < count) {
    std::string w;
    std::uint64_t syllables = 2 + Draw(rng, 2);
    for (std::uint64_t s = 0; s < syllables; ++s) {
      w += kOnsets[Draw(rng, kOnsets.size())];
      w += kVowels[Draw(rng, kVowels.size())];
    }
    if (Draw(rng, 2) == 0) w += kOnsets[Draw(rng, kOnsets.size())];
    if (taken.insert(w).second) words.push_back(w);
  }
  return words;
}

class DocBuilder {
 public:
  explicit DocBuilder(std::string id) { doc_.id = std::move(id); }

  std::size_t AddSentence(const std::vector<Word>& words) {
    std::size_t start = next_idx_;
    for (std::size_t i = 0; i < words.size(); ++i) {
      TaggedToken token;
      token.doc_id = doc_.id;
      token.sent_id = sent_;
      token.token_idx = next_idx_++;
      token.lemma = words[i].first;
      token.surface = words[i].first;
      if (i == 0 && !token.surface.empty() && token.surface[0] >= 'a' &&
          token.surface[0] <= 'z') {
        token.surface[0] = static_cast<char>(token.surface[0] - 'a' + 'A');
      }
      token.pos = words[i].second;
      doc_.tokens.push_back(std::move(token));
    }
    ++sent_;
    return start;
  }

  std::size_t size() const { return doc_.tokens.size(); }
  std::uint32_t sentences() const { return sent_; }
  Document Take() { return std::move(doc_); }

 private:
  Document doc_;
  std::uint32_t sent_ = 0;
  std::uint64_t next_idx_ = 0;
};

class Generator {
 public:
  explicit Generator(const SyntheticSpec& spec) : spec_(spec), rng_(spec.seed) {
    std::set<std::string> taken = {"the", "a", "it", "seem", "quiet", "."};
    for (std::string_view p : kPronouns) taken.insert(std::string(p));
    for (const std::string& adp : Adpositions()) taken.insert(adp);
    auto reserve = [&](const std::string& text) {
      for (std::string& w : SplitWords(text)) taken.insert(std::move(w));
    };
    for (const ActivityTemplate& t : spec.activities) {
      reserve(t.activity);
      for (const std::string& o : t.objects) reserve(o);
    }
    for (const SequenceTemplate& s : spec.sequences) {
      reserve(s.first);
      reserve(s.second);
    }
    nouns_ = PseudoWords(rng_, std::max<std::size_t>(spec.distractor_nouns, 1), taken);
    verbs_ = PseudoWords(rng_, std::max<std::size_t>(spec.distractor_verbs, 1), taken);
    activity_pattern_ = tc::CompileRule(
        tc::ParseAndCheck(scripts::Instantiate(scripts::kActivityActivityTemplate, 50)),
        "activity");
  }

  std::vector<Word> Activity(const std::string& label) {
    std::vector<Word> words = RealizeActivity(label, Pronoun());
    ValidateActivity(label, words);
    return words;
  }

  std::vector<Word> Object(const std::string& object) {
    std::vector<Word> words = {{"the", PosTag::kDet}};
    for (std::string& w : SplitWords(object)) words.emplace_back(std::move(w), PosTag::kNoun);
    words.emplace_back(".", PosTag::kPunct);
    return words;
  }

  std::vector<Word> Noise() {
    std::uint64_t kind = Draw(rng_, 20);
    const std::string& noun = nouns_[Draw(rng_, nouns_.size())];
    // Noise activities are intransitive: verb x noun labels would make a
    // long tail of rare activities whose tiny vectors outscore real ones.
    if (kind < 7) {
      return {{std::string(Pronoun()), PosTag::kPron},
              {verbs_[Draw(rng_, verbs_.size())], PosTag::kVerb},
              {".", PosTag::kPunct}};
    }
    if (kind < 14) return {{"a", PosTag::kDet}, {noun, PosTag::kNoun}, {".", PosTag::kPunct}};
    if (kind < 17) {
      return {{"the", PosTag::kDet},
              {noun, PosTag::kNoun},
              {verbs_[Draw(rng_, verbs_.size())], PosTag::kVerb},
              {".", PosTag::kPunct}};
    }
    return {{"it", PosTag::kPron}, {"seem", PosTag::kVerb}, {"quiet", PosTag::kAdj},
            {".", PosTag::kPunct}};
  }

  void AddNoise(DocBuilder& doc, std::uint64_t budget, SyntheticStats& stats) {
    std::uint64_t added = 0;
    while (added < budget) {
      std::vector<Word> words = Noise();
      doc.AddSentence(words);
      added += words.size();
    }
    stats.noise_tokens += added;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::string_view Pronoun() { return kPronouns[Draw(rng_, std::size(kPronouns))]; }

  void ValidateActivity(const std::string& label, const std::vector<Word>& words) {
    if (validated_.count(label) != 0) return;
    std::vector<TaggedToken> sentence;
    for (std::size_t i = 0; i < words.size(); ++i) {
      TaggedToken t;
      t.doc_id = "check";
      t.token_idx = i;
      t.lemma = words[i].first;
      t.surface = words[i].first;
      t.pos = words[i].second;
      sentence.push_back(std::move(t));
    }
    std::vector<tc::Match> matches = tc::ScanSentence(activity_pattern_, sentence);
    if (matches.size() != 1 || matches.front().label != label) {
      throw Error(ErrorCode::kInvalidArgument,
                  "activity '" + label + "' cannot be realized as a matching sentence");
    }
    validated_.insert(label);
  }

  const SyntheticSpec& spec_;
  std::mt19937_64 rng_;
  std::vector<std::string> nouns_;
  std::vector<std::string> verbs_;
  tc::CompiledPattern activity_pattern_;
  std::set<std::string> validated_;
};

void Validate(const SyntheticSpec& spec) {
  if (spec.activities.empty() && spec.sequences.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty synthetic corpus spec");
  }
  if (spec.span < 1) throw Error(ErrorCode::kInvalidArgument, "span must be >= 1");
  if (spec.noise_ratio < 0) throw Error(ErrorCode::kInvalidArgument, "noise_ratio < 0");
  if (spec.docs_per_file == 0) throw Error(ErrorCode::kInvalidArgument, "docs_per_file = 0");
  for (const ActivityTemplate& t : spec.activities) {
    if (t.activity.empty() || t.objects.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "activity template needs an activity and objects");
    }
    // Activity sentence plus one "the <object> ." sentence per object; the
    // last object must start within one window of the activity.
    std::size_t offset = SplitWords(t.activity).size() + 3;
    for (std::size_t i = 0; i + 1 < t.objects.size(); ++i) {
      offset += SplitWords(t.objects[i]).size() + 2;
    }
    if (offset > static_cast<std::size_t>(spec.span)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "template for '" + t.activity + "' does not fit in a " +
                      std::to_string(spec.span) + "-token window");
    }
  }
  for (const SequenceTemplate& s : spec.sequences) {
    if (s.first.empty() || s.second.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "sequence template needs two activities");
    }
    if (SplitWords(s.first).size() + 4 > static_cast<std::size_t>(spec.span)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sequence '" + s.first + "' does not fit in one window");
    }
  }
}

}  // namespace

std::vector<std::pair<std::string, PosTag>> RealizeActivity(std::string_view activity,
                                                            std::string_view pronoun) {
  std::vector<std::string> words = SplitWords(activity);
  std::vector<Word> out = {{std::string(pronoun), PosTag::kPron}};
  if (words.empty()) return out;
  out.emplace_back(words[0], PosTag::kVerb);
  std::size_t i = 1;
  if (i < words.size() && Adpositions().count(words[i]) != 0) {
    out.emplace_back(words[i], PosTag::kAdp);
    ++i;
  }
  if (i < words.size()) {
    out.emplace_back("the", PosTag::kDet);
    for (; i < words.size(); ++i) out.emplace_back(words[i], PosTag::kNoun);
  }
  out.emplace_back(".", PosTag::kPunct);
  return out;
}

SyntheticSpec DefaultSyntheticSpec() {
  SyntheticSpec spec;
  spec.noise_ratio = 10.0;
  spec.seed = 20160507;
  const std::uint64_t per_activity = 80;
  const std::uint64_t per_sequence = 60;
  const std::vector<std::pair<std::string, std::vector<std::string>>> activities = {
      {"cook", {"stove", "pot", "spoon"}},
      {"eat food", {"plate", "fork", "napkin"}},
      {"sip", {"mug", "saucer", "teaspoon"}},
      {"read", {"book", "bookmark", "lamp"}},
      {"type", {"keyboard", "laptop", "monitor"}},
      {"drive", {"highway", "dashboard", "windshield"}},
      {"swim", {"pool", "goggles", "towel"}},
      {"sleep", {"bed", "pillow", "blanket"}},
      {"shower", {"soap", "shampoo", "faucet"}},
      {"brush teeth", {"toothbrush", "toothpaste", "sink"}},
      {"pay", {"wallet", "cashier", "receipt"}},
      {"sit", {"bench", "chair", "cushion"}},
      {"write", {"pen", "notebook", "ink"}},
      {"paint", {"canvas", "easel", "palette"}},
      {"garden", {"shovel", "soil", "seed"}},
      {"fish", {"rod", "bait", "lake"}},
      {"run", {"treadmill", "sneaker", "track"}},
      {"wash dish", {"dishwasher", "sponge", "detergent"}},
      {"play guitar", {"amplifier", "pick", "stage"}},
      {"watch", {"television", "remote", "couch"}},
      {"bake", {"oven", "flour", "dough"}},
      {"climb", {"rope", "harness", "cliff"}},
      {"dance", {"ballroom", "music", "partner"}},
      {"ski", {"slope", "snow", "lift"}},
  };
  for (const auto& [activity, objects] : activities) {
    spec.activities.push_back({objects, activity, per_activity});
  }
  const std::vector<std::pair<std::string, std::string>> sequences = {
      {"wake up", "make coffee"},   {"open door", "walk in"},
      {"pick up phone", "answer call"}, {"take off shoe", "put on slipper"},
      {"turn on light", "look around"}, {"sit down", "take breath"},
      {"get in car", "start engine"},   {"enter store", "grab cart"},
      {"order coffee", "take sip"},     {"unlock door", "step inside"},
      {"fill glass", "drink water"},    {"lie down", "close eye"},
      {"pack bag", "leave house"},      {"boil water", "brew tea"},
      {"light candle", "blow out match"}, {"lock car", "walk away"},
      {"finish meal", "wipe mouth"},    {"get up", "stretch"},
      {"dry hair", "comb hair"},        {"hang up", "sigh"},
  };
  for (const auto& [first, second] : sequences) {
    spec.sequences.push_back({first, second, per_sequence});
  }
  return spec;
}

SyntheticSpec ScaleSpec(SyntheticSpec spec, std::uint64_t factor) {
  for (ActivityTemplate& t : spec.activities) t.count *= factor;
  for (SequenceTemplate& s : spec.sequences) s.count *= factor;
  return spec;
}

std::vector<Document> GenerateSyntheticDocuments(const SyntheticSpec& spec,
                                                 SyntheticStats* stats_out) {
  Validate(spec);
  Generator gen(spec);
  // (kind, template index): kind 0 = activity, 1 = sequence.
  std::vector<std::pair<int, std::size_t>> instances;
  for (std::size_t i = 0; i < spec.activities.size(); ++i) {
    for (std::uint64_t c = 0; c < spec.activities[i].count; ++c) instances.emplace_back(0, i);
  }
  for (std::size_t i = 0; i < spec.sequences.size(); ++i) {
    for (std::uint64_t c = 0; c < spec.sequences[i].count; ++c) instances.emplace_back(1, i);
  }
  if (instances.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic corpus spec plants nothing");
  }
  for (std::size_t i = instances.size() - 1; i > 0; --i) {
    std::swap(instances[i], instances[Draw(gen.rng(), i + 1)]);
  }

  SyntheticStats stats;
  std::vector<Document> docs;
  docs.reserve(instances.size());
  char id[32];
  for (std::size_t n = 0; n < instances.size(); ++n) {
    std::snprintf(id, sizeof(id), "syn-%07zu", n);
    std::vector<std::vector<Word>> core;
    const auto [kind, index] = instances[n];
    if (kind == 0) {
      const ActivityTemplate& t = spec.activities[index];
      core.push_back(gen.Activity(t.activity));
      for (const std::string& object : t.objects) core.push_back(gen.Object(object));
    } else {
      const SequenceTemplate& s = spec.sequences[index];
      core.push_back(gen.Activity(s.first));
      core.push_back(gen.Activity(s.second));
    }
    std::uint64_t planted = 0;
    for (const std::vector<Word>& sentence : core) planted += sentence.size();
    auto budget = static_cast<std::uint64_t>(std::llround(spec.noise_ratio * planted));
    DocBuilder doc(id);
    gen.AddNoise(doc, budget / 2, stats);
    for (const std::vector<Word>& sentence : core) doc.AddSentence(sentence);
    gen.AddNoise(doc, budget - budget / 2, stats);
    stats.planted_tokens += planted;
    stats.planted_sentences += core.size();
    stats.sentences += doc.sentences();
    stats.tokens += doc.size();
    ++stats.docs;
    docs.push_back(doc.Take());
  }
  if (stats_out != nullptr) *stats_out = stats;
  return docs;
}

SyntheticStats GenerateSyntheticCorpus(const SyntheticSpec& spec,
                                       const std::filesystem::path& out_dir) {
  SyntheticStats stats;
  std::vector<Document> docs = GenerateSyntheticDocuments(spec, &stats);
  std::filesystem::create_directories(out_dir);
  char name[32];
  for (std::size_t begin = 0; begin < docs.size(); begin += spec.docs_per_file) {
    std::snprintf(name, sizeof(name), "part-%05zu.tsv", begin / spec.docs_per_file);
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + (out_dir / name).string());
    out << "# synthetic corpus, seed " << spec.seed << "\n";
    std::size_t end = std::min(docs.size(), begin + spec.docs_per_file);
    for (std::size_t i = begin; i < end; ++i) WriteTsv(out, docs[i].tokens);
    ++stats.files;
  }
  return stats;
}

SyntheticSpec ParseSyntheticSpec(std::string_view text) {
  SyntheticSpec spec;
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& a : j.value("activities", nlohmann::json::array())) {
      spec.activities.push_back({a.at("objects").get<std::vector<std::string>>(),
                                 a.at("activity").get<std::string>(),
                                 a.at("count").get<std::uint64_t>()});
    }
    for (const auto& s : j.value("sequences", nlohmann::json::array())) {
      spec.sequences.push_back({s.at("first").get<std::string>(),
                                s.at("second").get<std::string>(),
                                s.at("count").get<std::uint64_t>()});
    }
    spec.noise_ratio = j.value("noise_ratio", spec.noise_ratio);
    spec.seed = j.value("seed", spec.seed);
    spec.span = j.value("span", spec.span);
    spec.docs_per_file = j.value("docs_per_file", spec.docs_per_file);
    spec.distractor_nouns = j.value("distractor_nouns", spec.distractor_nouns);
    spec.distractor_verbs = j.value("distractor_verbs", spec.distractor_verbs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad synthetic spec: ") + e.what());
  }
  return spec;
}

SyntheticSpec LoadSyntheticSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSyntheticSpec(buffer.str());
}

std::string SyntheticSpecToJson(const SyntheticSpec& spec) {
  nlohmann::ordered_json j;
  j["activities"] = nlohmann::ordered_json::array();
  for (const ActivityTemplate& t : spec.activities) {
    j["activities"].push_back({{"objects", t.objects}, {"activity", t.activity}, {"count", t.count}});
  }
  j["sequences"] = nlohmann::ordered_json::array();
  for (const SequenceTemplate& s : spec.sequences) {
    j["sequences"].push_back({{"first", s.first}, {"second", s.second}, {"count", s.count}});
  }
  j["noise_ratio"] = spec.noise_ratio;
  j["seed"] = spec.seed;
  j["span"] = spec.span;
  j["docs_per_file"] = spec.docs_per_file;
  j["distractor_nouns"] = spec.distractor_nouns;
  j["distractor_verbs"] = spec.distractor_verbs;
  return j.dump(2);
}

}  // namespace akb
