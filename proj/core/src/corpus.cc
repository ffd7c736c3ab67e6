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

#include "activitykb/corpus.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>

#include "activitykb/errors.h"

namespace akb {
namespace {

constexpr std::array<std::string_view, kPosTagCount> kPosNames = {
    "NOUN", "VERB", "ADJ", "ADV", "ADP",  "DET",   "PRON",
    "PART", "NUM",  "CONJ", "PRT", "X",   "PUNCT",
};

template <typename T>
bool ParseUnsigned(std::string_view text, T& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  return kPosNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

TaggedToken ParseTsvLine(std::string_view line, const std::string& where,
                         bool* unknown_pos) {
  std::array<std::string_view, 6> fields;
  std::size_t count = 0;
  std::size_t begin = 0;
  while (true) {
    std::size_t tab = line.find('\t', begin);
    std::string_view field = line.substr(
        begin, tab == std::string_view::npos ? std::string_view::npos
                                             : tab - begin);
    if (count < fields.size()) fields[count] = field;
    ++count;
    if (tab == std::string_view::npos) break;
    begin = tab + 1;
  }
  if (count != 6) {
    throw Error(ErrorCode::kParse, where + ": expected 6 tab-separated fields, got " +
                                       std::to_string(count));
  }
  TaggedToken token;
  if (fields[0].empty()) throw Error(ErrorCode::kParse, where + ": empty doc_id");
  token.doc_id = std::string(fields[0]);
  if (!ParseUnsigned(fields[1], token.sent_id)) {
    throw Error(ErrorCode::kParse, where + ": sent_id is not a non-negative integer");
  }
  if (!ParseUnsigned(fields[2], token.token_idx)) {
    throw Error(ErrorCode::kParse, where + ": token_idx is not a non-negative integer");
  }
  token.surface = std::string(fields[3]);
  if (fields[4].empty()) throw Error(ErrorCode::kParse, where + ": empty lemma");
  token.lemma = AsciiLower(fields[4]);
  std::optional<PosTag> tag = ParsePosTag(fields[5]);
  if (unknown_pos != nullptr) *unknown_pos = !tag.has_value();
  token.pos = tag.value_or(PosTag::kX);
  return token;
}

std::string FormatTsvLine(const TaggedToken& token) {
  std::string line;
  line.reserve(token.doc_id.size() + token.surface.size() +
               token.lemma.size() + 32);
  line += token.doc_id;
  line += '\t';
  line += std::to_string(token.sent_id);
  line += '\t';
  line += std::to_string(token.token_idx);
  line += '\t';
  line += token.surface;
  line += '\t';
  line += token.lemma;
  line += '\t';
  line += PosTagName(token.pos);
  return line;
}

void WriteTsv(std::ostream& out, std::span<const TaggedToken> tokens) {
  for (const TaggedToken& token : tokens) out << FormatTsvLine(token) << '\n';
}

std::vector<std::filesystem::path> CorpusReader::ListFiles(
    const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorCode::kIo, "corpus path does not exist: " + path.string());
  }
  if (!fs::is_directory(path, ec)) return {path};
  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != ".tsv") continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return files;
}

CorpusReader::CorpusReader(const std::filesystem::path& path)
    : files_(ListFiles(path)) {}

bool CorpusReader::OpenNextFile() {
  while (next_file_ < files_.size()) {
    current_ = files_[next_file_++];
    in_ = std::ifstream(current_, std::ios::binary);
    line_no_ = 0;
    if (!in_) throw Error(ErrorCode::kIo, "cannot open " + current_.string());
    return true;
  }
  return false;
}

bool CorpusReader::ReadToken(TaggedToken& token) {
  std::string line;
  while (true) {
    if (!in_.is_open() || !std::getline(in_, line)) {
      if (in_.is_open()) in_.close();
      if (!OpenNextFile()) return false;
      continue;
    }
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    bool unknown = false;
    token = ParseTsvLine(line, current_.string() + ":" + std::to_string(line_no_),
                         &unknown);
    if (unknown) ++stats_.unknown_pos_tags;
    return true;
  }
}

bool CorpusReader::Next(Document& doc) {
  doc.id.clear();
  doc.tokens.clear();
  if (done_) return false;
  if (!lookahead_) {
    TaggedToken first;
    if (!ReadToken(first)) {
      done_ = true;
      if (stats_.total_tokens == 0) {
        throw Error(ErrorCode::kEmptyCorpus, "empty corpus: no tokens found");
      }
      return false;
    }
    lookahead_ = std::move(first);
  }
  std::string where = current_.string() + ":" + std::to_string(line_no_);
  if (finished_docs_.count(lookahead_->doc_id) != 0) {
    throw Error(ErrorCode::kParse, where + ": document '" + lookahead_->doc_id +
                                       "' is not contiguous");
  }
  doc.id = lookahead_->doc_id;
  doc.tokens.push_back(std::move(*lookahead_));
  lookahead_.reset();
  TaggedToken token;
  while (ReadToken(token)) {
    if (token.doc_id != doc.id) {
      lookahead_ = std::move(token);
      break;
    }
    const TaggedToken& prev = doc.tokens.back();
    where = current_.string() + ":" + std::to_string(line_no_);
    if (token.token_idx <= prev.token_idx) {
      throw Error(ErrorCode::kParse, where + ": token_idx must strictly increase");
    }
    if (token.sent_id < prev.sent_id) {
      throw Error(ErrorCode::kParse, where + ": sent_id decreased within document");
    }
    doc.tokens.push_back(std::move(token));
  }
  finished_docs_.insert(doc.id);
  stats_.total_tokens += doc.tokens.size();
  ++stats_.total_docs;
  return true;
}

std::vector<Document> ReadCorpus(const std::filesystem::path& path,
                                 CorpusStats* stats) {
  CorpusReader reader(path);
  std::vector<Document> docs;
  Document doc;
  while (reader.Next(doc)) docs.push_back(std::move(doc));
  if (stats != nullptr) *stats = reader.stats();
  return docs;
}

std::vector<std::span<const TaggedToken>> Sentences(
    std::span<const TaggedToken> tokens) {
  std::vector<std::span<const TaggedToken>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= tokens.size(); ++i) {
    if (i == tokens.size() || tokens[i].sent_id != tokens[begin].sent_id ||
        tokens[i].doc_id != tokens[begin].doc_id) {
      if (i > begin) out.push_back(tokens.subspan(begin, i - begin));
      begin = i;
    }
  }
  return out;
}

}  // namespace akb
