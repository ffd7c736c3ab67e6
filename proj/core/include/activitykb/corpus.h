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

#ifndef ACTIVITYKB_CORPUS_H_
#define ACTIVITYKB_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace akb {

// Universal part-of-speech tags. Unknown tags read from a corpus map to kX.
enum class PosTag : std::uint8_t {
  kNoun,
  kVerb,
  kAdj,
  kAdv,
  kAdp,
  kDet,
  kPron,
  kPart,
  kNum,
  kConj,
  kPrt,
  kX,
  kPunct,
};

inline constexpr int kPosTagCount = 13;

std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

struct TaggedToken {
  std::string doc_id;
  std::uint32_t sent_id = 0;
  std::uint64_t token_idx = 0;
  std::string surface;
  std::string lemma;
  PosTag pos = PosTag::kX;

  bool operator==(const TaggedToken&) const = default;
};

struct CorpusStats {
  std::uint64_t total_tokens = 0;
  std::uint64_t total_docs = 0;
  std::uint64_t unknown_pos_tags = 0;
};

struct Document {
  std::string id;
  std::vector<TaggedToken> tokens;
};

// Streams documents out of interchange TSV files, one document at a time.
// A directory is read file by file in lexicographic order of file names;
// only regular files ending in ".tsv" are considered.
class CorpusReader {
 public:
  explicit CorpusReader(const std::filesystem::path& path);

  CorpusReader(const CorpusReader&) = delete;
  CorpusReader& operator=(const CorpusReader&) = delete;

  // Fills `doc` with the next document. Returns false once the stream is
  // exhausted. Throws Error(kParse) naming file and line on malformed input
  // and Error(kEmptyCorpus) if the corpus held no tokens at all.
  bool Next(Document& doc);

  // Complete only after Next() returned false.
  const CorpusStats& stats() const { return stats_; }

  static std::vector<std::filesystem::path> ListFiles(
      const std::filesystem::path& path);

 private:
  bool ReadToken(TaggedToken& token);
  bool OpenNextFile();

  std::vector<std::filesystem::path> files_;
  std::size_t next_file_ = 0;
  std::ifstream in_;
  std::filesystem::path current_;
  std::uint64_t line_no_ = 0;
  std::optional<TaggedToken> lookahead_;
  std::unordered_set<std::string> finished_docs_;
  CorpusStats stats_;
  bool done_ = false;
};

std::vector<Document> ReadCorpus(const std::filesystem::path& path,
                                 CorpusStats* stats = nullptr);

// Splits a document-ordered token run at every change of (doc_id, sent_id).
std::vector<std::span<const TaggedToken>> Sentences(
    std::span<const TaggedToken> tokens);

// Parses one interchange line (without the trailing newline). Throws
// Error(kParse) with the message prefixed by `where`. Sets *unknown_pos
// when the tag column did not name a known tag.
TaggedToken ParseTsvLine(std::string_view line, const std::string& where,
                         bool* unknown_pos = nullptr);

std::string FormatTsvLine(const TaggedToken& token);
void WriteTsv(std::ostream& out, std::span<const TaggedToken> tokens);

}  // namespace akb

#endif  // ACTIVITYKB_CORPUS_H_
