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

#include "activitykb/tc_lang.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <set>
#include <utility>

namespace akb::tc {
namespace {

std::string FormatLoc(SourceLoc loc, const std::string& message) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
         message;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// ---------------------------------------------------------------------------
// Lexer

enum class TokType {
  kIdent,
  kString,
  kInt,
  kLBracket,
  kRBracket,
  kLParen,
  kRParen,
  kPipe,
  kQuestion,
  kPlus,
  kMinus,
  kEquals,
  kComma,
  kNewline,
  kEnd,
};

const char* TokName(TokType type) {
  switch (type) {
    case TokType::kIdent: return "identifier";
    case TokType::kString: return "string literal";
    case TokType::kInt: return "integer";
    case TokType::kLBracket: return "'['";
    case TokType::kRBracket: return "']'";
    case TokType::kLParen: return "'('";
    case TokType::kRParen: return "')'";
    case TokType::kPipe: return "'|'";
    case TokType::kQuestion: return "'?'";
    case TokType::kPlus: return "'+'";
    case TokType::kMinus: return "'-'";
    case TokType::kEquals: return "'='";
    case TokType::kComma: return "','";
    case TokType::kNewline: return "end of line";
    case TokType::kEnd: return "end of input";
  }
  return "token";
}

struct Tok {
  TokType type = TokType::kEnd;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Tok> Run() {
    std::vector<Tok> out;
    while (true) {
      SkipBlanks();
      Tok tok;
      tok.loc = Loc();
      if (pos_ >= src_.size()) {
        tok.type = TokType::kEnd;
        out.push_back(tok);
        return out;
      }
      char c = src_[pos_];
      if (c == '\n') {
        tok.type = TokType::kNewline;
        Advance();
        out.push_back(tok);
        continue;
      }
      if (c == '"') {
        tok.type = TokType::kString;
        tok.text = LexString(tok.loc);
        out.push_back(tok);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tok.type = TokType::kInt;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          tok.text += src_[pos_];
          Advance();
        }
        out.push_back(tok);
        continue;
      }
      if (IsIdentStart(c)) {
        tok.type = TokType::kIdent;
        tok.text = LexIdent();
        out.push_back(tok);
        continue;
      }
      switch (c) {
        case '[': tok.type = TokType::kLBracket; break;
        case ']': tok.type = TokType::kRBracket; break;
        case '(': tok.type = TokType::kLParen; break;
        case ')': tok.type = TokType::kRParen; break;
        case '|': tok.type = TokType::kPipe; break;
        case '?': tok.type = TokType::kQuestion; break;
        case '+': tok.type = TokType::kPlus; break;
        case '-': tok.type = TokType::kMinus; break;
        case '=': tok.type = TokType::kEquals; break;
        case ',': tok.type = TokType::kComma; break;
        default:
          throw TcError(DiagnosticKind::kSyntax, tok.loc,
                        std::string("unexpected character '") + c + "'");
      }
      Advance();
      out.push_back(tok);
    }
  }

 private:
  SourceLoc Loc() const { return {line_, column_}; }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipBlanks() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        Advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  std::string LexString(SourceLoc start) {
    Advance();  // opening quote
    std::string text;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw TcError(DiagnosticKind::kSyntax, start, "unterminated string literal");
      }
      char c = src_[pos_];
      if (c == '"') {
        Advance();
        return text;
      }
      if (c == '\\' && pos_ + 1 < src_.size() &&
          (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\')) {
        Advance();
        c = src_[pos_];
      }
      text += c;
      Advance();
    }
  }

  // A '-' continues an identifier only when an identifier character follows
  // it, so `laptop-` lexes as `laptop` followed by the minus operator.
  std::string LexIdent() {
    std::string text;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (IsIdentChar(c)) {
        text += c;
        Advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && IsIdentChar(src_[pos_ + 1])) {
        text += c;
        Advance();
      } else {
        break;
      }
    }
    return text;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

enum class AggName { kNone, kFreq, kCoOccur, kSkipGram, kMi };

AggName ClassifyAgg(std::string_view name) {
  std::string lower = Lower(name);
  if (lower == "freq") return AggName::kFreq;
  if (lower == "co-occur") return AggName::kCoOccur;
  if (lower == "skip-gram") return AggName::kSkipGram;
  if (lower == "mi") return AggName::kMi;
  return AggName::kNone;
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  TcProgram Run() {
    TcProgram program;
    bool have_pipeline = false;
    while (true) {
      SkipNewlines();
      if (Peek().type == TokType::kEnd) break;
      const Tok& head = Peek();
      if (head.type != TokType::kIdent) {
        throw Unexpected(head, "a rule definition or pipeline");
      }
      if (PeekAt(1).type == TokType::kEquals) {
        if (have_pipeline) {
          throw TcError(DiagnosticKind::kSyntax, head.loc,
                        "rule definitions must precede the pipeline");
        }
        program.rules.push_back(ParseRule(program));
      } else if (PeekAt(1).type == TokType::kLParen) {
        if (have_pipeline) {
          throw TcError(DiagnosticKind::kDuplicatePipeline, head.loc,
                        "program already has a pipeline");
        }
        program.pipeline = ParseAgg();
        have_pipeline = true;
      } else {
        throw Unexpected(PeekAt(1), "'=' or '('");
      }
      EndOfLine();
    }
    if (!have_pipeline) {
      throw TcError(DiagnosticKind::kMissingPipeline, Peek().loc,
                    "program has no aggregation pipeline");
    }
    if (program.rules.empty()) {
      throw TcError(DiagnosticKind::kSyntax, program.pipeline.loc,
                    "program defines no rules");
    }
    return program;
  }

 private:
  const Tok& Peek() const { return toks_[pos_]; }
  const Tok& PeekAt(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Tok Take() {
    Tok tok = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return tok;
  }

  TcError Unexpected(const Tok& tok, const std::string& expected) const {
    std::string got = TokName(tok.type);
    if (tok.type == TokType::kIdent || tok.type == TokType::kInt) {
      got += " '" + tok.text + "'";
    }
    return TcError(DiagnosticKind::kSyntax, tok.loc,
                   "expected " + expected + ", found " + got);
  }

  Tok Expect(TokType type) {
    if (Peek().type != type) throw Unexpected(Peek(), TokName(type));
    return Take();
  }

  void SkipNewlines() {
    while (Peek().type == TokType::kNewline) Take();
  }

  void EndOfLine() {
    if (Peek().type == TokType::kEnd) return;
    Expect(TokType::kNewline);
  }

  RuleDef ParseRule(const TcProgram& program) {
    Tok name = Take();
    if (ClassifyAgg(name.text) != AggName::kNone) {
      throw TcError(DiagnosticKind::kReservedName, name.loc,
                    "'" + name.text + "' is an aggregator name");
    }
    if (program.FindRule(name.text) != nullptr) {
      throw TcError(DiagnosticKind::kDuplicateRule, name.loc,
                    "rule '" + name.text + "' is already defined");
    }
    Expect(TokType::kEquals);
    RuleDef def;
    def.name = name.text;
    def.loc = name.loc;
    def.expr = ParseAlt();
    return def;
  }

  static bool StartsAtom(TokType type) {
    return type == TokType::kString || type == TokType::kLBracket ||
           type == TokType::kIdent || type == TokType::kLParen;
  }

  PatternExpr ParseAlt() {
    SourceLoc loc = Peek().loc;
    std::vector<PatternExpr> items;
    items.push_back(ParseSeq());
    while (Peek().type == TokType::kPipe) {
      Take();
      items.push_back(ParseSeq());
    }
    if (items.size() == 1) return std::move(items.front());
    PatternExpr alt = PatternExpr::Alt(std::move(items));
    alt.loc = loc;
    return alt;
  }

  PatternExpr ParseSeq() {
    SourceLoc loc = Peek().loc;
    std::vector<PatternExpr> items;
    while (StartsAtom(Peek().type)) items.push_back(ParsePostfix());
    if (items.empty()) throw Unexpected(Peek(), "a pattern");
    if (items.size() == 1) return std::move(items.front());
    PatternExpr seq = PatternExpr::Seq(std::move(items));
    seq.loc = loc;
    return seq;
  }

  PatternExpr ParsePostfix() {
    PatternExpr expr = ParseAtom();
    while (true) {
      TokType type = Peek().type;
      SourceLoc loc = expr.loc;
      if (type == TokType::kQuestion) {
        expr = PatternExpr::Opt(std::move(expr));
      } else if (type == TokType::kPlus) {
        expr = PatternExpr::Plus(std::move(expr));
      } else if (type == TokType::kMinus) {
        expr = PatternExpr::Minus(std::move(expr));
      } else {
        return expr;
      }
      expr.loc = loc;
      Take();
    }
  }

  PatternExpr ParseAtom() {
    Tok tok = Take();
    switch (tok.type) {
      case TokType::kString: {
        if (tok.text.empty()) {
          throw TcError(DiagnosticKind::kSyntax, tok.loc, "empty string literal");
        }
        PatternExpr lit = PatternExpr::Literal(tok.text);
        lit.loc = tok.loc;
        return lit;
      }
      case TokType::kLBracket: {
        Tok tag = Expect(TokType::kIdent);
        std::optional<PosTag> pos = ParsePosTag(tag.text);
        if (!pos) {
          throw TcError(DiagnosticKind::kSyntax, tag.loc,
                        "unknown part-of-speech tag '" + tag.text + "'");
        }
        Expect(TokType::kRBracket);
        PatternExpr p = PatternExpr::Pos(*pos);
        p.loc = tok.loc;
        return p;
      }
      case TokType::kIdent: {
        if (ClassifyAgg(tok.text) != AggName::kNone) {
          throw TcError(DiagnosticKind::kReservedName, tok.loc,
                        "aggregator '" + tok.text + "' used inside a pattern");
        }
        PatternExpr ref = PatternExpr::Ref(tok.text);
        ref.loc = tok.loc;
        return ref;
      }
      case TokType::kLParen: {
        PatternExpr inner = ParseAlt();
        Expect(TokType::kRParen);
        return inner;
      }
      default:
        throw Unexpected(tok, "a pattern");
    }
  }

  int ParseInt() {
    Tok tok = Peek();
    if (tok.type != TokType::kInt) throw Unexpected(tok, "an integer");
    Take();
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(),
                                     tok.text.data() + tok.text.size(), value);
    if (ec != std::errc()) {
      throw TcError(DiagnosticKind::kInvalidArgument, tok.loc,
                    "integer out of range: " + tok.text);
    }
    return value;
  }

  std::string ParseRuleName() {
    Tok tok = Peek();
    if (tok.type != TokType::kIdent) throw Unexpected(tok, "a rule name");
    if (ClassifyAgg(tok.text) != AggName::kNone) {
      throw Unexpected(tok, "a rule name");
    }
    Take();
    return tok.text;
  }

  AggExpr ParseAgg() {
    Tok name = Expect(TokType::kIdent);
    AggName which = ClassifyAgg(name.text);
    if (which == AggName::kNone) {
      throw TcError(DiagnosticKind::kSyntax, name.loc,
                    "unknown aggregator '" + name.text + "'");
    }
    Expect(TokType::kLParen);
    AggExpr agg;
    agg.loc = name.loc;
    switch (which) {
      case AggName::kFreq:
        agg.kind = AggKind::kFreq;
        if (Peek().type == TokType::kIdent && PeekAt(1).type == TokType::kLParen) {
          agg.inner.push_back(ParseAgg());
        } else {
          agg.rule = ParseRuleName();
        }
        break;
      case AggName::kMi:
        agg.kind = AggKind::kMi;
        if (!(Peek().type == TokType::kIdent && PeekAt(1).type == TokType::kLParen)) {
          throw Unexpected(Peek(), "an aggregation such as freq(...)");
        }
        agg.inner.push_back(ParseAgg());
        break;
      case AggName::kCoOccur:
        agg.kind = AggKind::kCoOccur;
        agg.rule = ParseRuleName();
        Expect(TokType::kComma);
        agg.rule_b = ParseRuleName();
        Expect(TokType::kComma);
        agg.span = ParseInt();
        break;
      case AggName::kSkipGram:
        agg.kind = AggKind::kSkipGram;
        agg.rule = ParseRuleName();
        Expect(TokType::kComma);
        agg.n = ParseInt();
        Expect(TokType::kComma);
        agg.span = ParseInt();
        break;
      case AggName::kNone:
        break;
    }
    Expect(TokType::kRParen);
    return agg;
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution

void CollectRefs(const PatternExpr& expr, std::vector<const PatternExpr*>& out) {
  if (expr.kind == PatternKind::kRuleRef) out.push_back(&expr);
  for (const PatternExpr& child : expr.children) CollectRefs(child, out);
}

void CollectPipelineRules(const AggExpr& agg,
                          std::vector<std::pair<std::string, SourceLoc>>& out) {
  if (!agg.rule.empty()) out.emplace_back(agg.rule, agg.loc);
  if (!agg.rule_b.empty()) out.emplace_back(agg.rule_b, agg.loc);
  for (const AggExpr& inner : agg.inner) CollectPipelineRules(inner, out);
}

void Resolve(const TcProgram& program) {
  for (const RuleDef& rule : program.rules) {
    std::vector<const PatternExpr*> refs;
    CollectRefs(rule.expr, refs);
    for (const PatternExpr* ref : refs) {
      if (program.FindRule(ref->text) == nullptr) {
        throw TcError(DiagnosticKind::kUndefinedRule, ref->loc,
                      "undefined rule '" + ref->text + "'");
      }
    }
  }
  std::vector<std::pair<std::string, SourceLoc>> used;
  CollectPipelineRules(program.pipeline, used);
  for (const auto& [name, loc] : used) {
    if (program.FindRule(name) == nullptr) {
      throw TcError(DiagnosticKind::kUndefinedRule, loc,
                    "pipeline references undefined rule '" + name + "'");
    }
  }

  // Depth-first search for a back edge in the reference graph.
  const std::size_t n = program.rules.size();
  std::vector<std::vector<int>> edges(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<const PatternExpr*> refs;
    CollectRefs(program.rules[i].expr, refs);
    for (const PatternExpr* ref : refs) edges[i].push_back(program.RuleIndex(ref->text));
  }
  std::vector<int> color(n, 0);
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int node) -> void {
    color[node] = 1;
    stack.push_back(node);
    for (int next : edges[node]) {
      if (color[next] == 1) {
        auto it = std::find(stack.begin(), stack.end(), next);
        std::string path;
        for (; it != stack.end(); ++it) path += program.rules[*it].name + " -> ";
        path += program.rules[next].name;
        throw TcError(DiagnosticKind::kCyclicReference, program.rules[next].loc,
                      "cyclic rule reference: " + path);
      }
      if (color[next] == 0) self(self, next);
    }
    stack.pop_back();
    color[node] = 2;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (color[i] == 0) dfs(dfs, static_cast<int>(i));
  }
}

// ---------------------------------------------------------------------------
// Checking

void Normalize(PatternExpr& expr, const TcProgram& program) {
  for (PatternExpr& child : expr.children) Normalize(child, program);
  if (expr.kind == PatternKind::kMinus &&
      expr.children.front().kind == PatternKind::kMinus) {
    PatternExpr inner = std::move(expr.children.front());
    expr = std::move(inner);
  }
  if (expr.kind == PatternKind::kRuleRef) {
    expr.rule_index = program.RuleIndex(expr.text);
  }
}

StreamKind RuleStream(const TcProgram& program, const std::string& name) {
  const RuleDef* rule = program.FindRule(name);
  return AnalyzePairShape(rule->expr) ? StreamKind::kPairs : StreamKind::kLabels;
}

void CheckSpan(const AggExpr& agg) {
  if (agg.span < 1) {
    throw TcError(DiagnosticKind::kInvalidArgument, agg.loc,
                  "window span must be a positive integer");
  }
}

StreamKind CheckAgg(const AggExpr& agg, const TcProgram& program) {
  switch (agg.kind) {
    case AggKind::kCoOccur:
      CheckSpan(agg);
      return StreamKind::kPairs;
    case AggKind::kSkipGram:
      if (agg.n != 2) {
        throw TcError(DiagnosticKind::kUnsupported, agg.loc,
                      "unsupported n=" + std::to_string(agg.n) +
                          " for skip-gram; only n=2 is supported");
      }
      CheckSpan(agg);
      return StreamKind::kPairs;
    case AggKind::kFreq: {
      StreamKind source;
      if (agg.inner.empty()) {
        source = RuleStream(program, agg.rule);
      } else {
        source = CheckAgg(agg.inner.front(), program);
        if (source != StreamKind::kPairs && source != StreamKind::kLabels) {
          throw TcError(DiagnosticKind::kTypeError, agg.inner.front().loc,
                        "freq expects a rule or a pair stream");
        }
      }
      return source == StreamKind::kPairs ? StreamKind::kPairTable
                                          : StreamKind::kFreqTable;
    }
    case AggKind::kMi: {
      const AggExpr& inner = agg.inner.front();
      if (inner.kind != AggKind::kFreq) {
        throw TcError(DiagnosticKind::kTypeError, inner.loc, "MI expects freq(...)");
      }
      if (CheckAgg(inner, program) != StreamKind::kPairTable) {
        throw TcError(DiagnosticKind::kTypeError, inner.loc,
                      "MI requires pair-emitting source");
      }
      return StreamKind::kMiTable;
    }
  }
  return StreamKind::kLabels;
}

std::string EscapeLiteral(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

bool NeedsGroup(const PatternExpr& expr) {
  return expr.kind == PatternKind::kSeq || expr.kind == PatternKind::kAlt;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* DiagnosticKindName(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::kSyntax: return "syntax error";
    case DiagnosticKind::kUndefinedRule: return "undefined rule";
    case DiagnosticKind::kCyclicReference: return "cyclic reference";
    case DiagnosticKind::kMissingPipeline: return "missing pipeline";
    case DiagnosticKind::kDuplicatePipeline: return "duplicate pipeline";
    case DiagnosticKind::kDuplicateRule: return "duplicate rule";
    case DiagnosticKind::kReservedName: return "reserved name";
    case DiagnosticKind::kTypeError: return "type error";
    case DiagnosticKind::kUnsupported: return "unsupported";
    case DiagnosticKind::kInvalidArgument: return "invalid argument";
  }
  return "error";
}

TcError::TcError(DiagnosticKind kind, SourceLoc loc, const std::string& message)
    : Error(kind == DiagnosticKind::kUnsupported ? ErrorCode::kUnsupported
                                                 : ErrorCode::kParse,
            FormatLoc(loc, message)),
      kind_(kind),
      loc_(loc),
      detail_(message) {}

PatternExpr PatternExpr::Literal(std::string text) {
  PatternExpr e;
  e.kind = PatternKind::kLiteral;
  e.text = std::move(text);
  return e;
}

PatternExpr PatternExpr::Pos(PosTag tag) {
  PatternExpr e;
  e.kind = PatternKind::kPosClass;
  e.pos = tag;
  return e;
}

PatternExpr PatternExpr::Ref(std::string name) {
  PatternExpr e;
  e.kind = PatternKind::kRuleRef;
  e.text = std::move(name);
  return e;
}

PatternExpr PatternExpr::Seq(std::vector<PatternExpr> items) {
  PatternExpr e;
  e.kind = PatternKind::kSeq;
  e.children = std::move(items);
  return e;
}

PatternExpr PatternExpr::Alt(std::vector<PatternExpr> items) {
  PatternExpr e;
  e.kind = PatternKind::kAlt;
  e.children = std::move(items);
  return e;
}

PatternExpr PatternExpr::Opt(PatternExpr inner) {
  PatternExpr e;
  e.kind = PatternKind::kOpt;
  e.loc = inner.loc;
  e.children.push_back(std::move(inner));
  return e;
}

PatternExpr PatternExpr::Plus(PatternExpr inner) {
  PatternExpr e;
  e.kind = PatternKind::kPlus;
  e.loc = inner.loc;
  e.children.push_back(std::move(inner));
  return e;
}

PatternExpr PatternExpr::Minus(PatternExpr inner) {
  if (inner.kind == PatternKind::kMinus) return inner;
  PatternExpr e;
  e.kind = PatternKind::kMinus;
  e.loc = inner.loc;
  e.children.push_back(std::move(inner));
  return e;
}

bool operator==(const PatternExpr& a, const PatternExpr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case PatternKind::kLiteral:
    case PatternKind::kRuleRef:
      if (a.text != b.text) return false;
      break;
    case PatternKind::kPosClass:
      if (a.pos != b.pos) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!(a.children[i] == b.children[i])) return false;
  }
  return true;
}

bool operator==(const AggExpr& a, const AggExpr& b) {
  return a.kind == b.kind && a.inner == b.inner && a.rule == b.rule &&
         a.rule_b == b.rule_b && a.n == b.n && a.span == b.span;
}

bool operator==(const TcProgram& a, const TcProgram& b) {
  if (a.rules.size() != b.rules.size() || !(a.pipeline == b.pipeline)) {
    return false;
  }
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (a.rules[i].name != b.rules[i].name ||
        !(a.rules[i].expr == b.rules[i].expr)) {
      return false;
    }
  }
  return true;
}

const RuleDef* TcProgram::FindRule(std::string_view name) const {
  for (const RuleDef& rule : rules) {
    if (rule.name == name) return &rule;
  }
  return nullptr;
}

int TcProgram::RuleIndex(std::string_view name) const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::optional<PairShape> AnalyzePairShape(const PatternExpr& expr) {
  if (expr.kind != PatternKind::kSeq) return std::nullopt;
  PairShape shape;
  for (std::size_t i = 0; i < expr.children.size(); ++i) {
    const PatternExpr* child = &expr.children[i];
    if (child->kind == PatternKind::kOpt) child = &child->children.front();
    if (child->kind != PatternKind::kRuleRef) continue;
    shape.components.push_back(i);
    shape.component_rules.push_back(child->text);
  }
  std::set<std::string> distinct(shape.component_rules.begin(),
                                 shape.component_rules.end());
  if (shape.components.size() < 2 || distinct.size() != 2) return std::nullopt;
  shape.anchor_rule = shape.component_rules.front();
  for (std::size_t i = 0; i < shape.component_rules.size(); ++i) {
    if (shape.component_rules[i] != shape.anchor_rule) {
      shape.head = i;
      break;
    }
  }
  return shape;
}

TcProgram ParseProgram(std::string_view source) {
  TcProgram program = Parser(Lexer(source).Run()).Run();
  Resolve(program);
  return program;
}

CheckedProgram CheckProgram(TcProgram program) {
  Resolve(program);
  for (RuleDef& rule : program.rules) Normalize(rule.expr, program);
  const AggExpr& top = program.pipeline;
  if (top.kind != AggKind::kFreq && top.kind != AggKind::kMi) {
    throw TcError(DiagnosticKind::kTypeError, top.loc,
                  "pipeline must be freq(...) or MI(...)");
  }
  CheckedProgram checked;
  checked.output = CheckAgg(top, program);
  checked.program = std::move(program);
  return checked;
}

std::string FormatPattern(const PatternExpr& expr) {
  auto grouped = [](const PatternExpr& e) {
    return NeedsGroup(e) ? "(" + FormatPattern(e) + ")" : FormatPattern(e);
  };
  switch (expr.kind) {
    case PatternKind::kLiteral:
      return "\"" + EscapeLiteral(expr.text) + "\"";
    case PatternKind::kPosClass:
      return "[" + std::string(PosTagName(expr.pos)) + "]";
    case PatternKind::kRuleRef:
      return expr.text;
    case PatternKind::kSeq: {
      std::string out;
      for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (i > 0) out += ' ';
        out += grouped(expr.children[i]);
      }
      return out;
    }
    case PatternKind::kAlt: {
      std::string out;
      for (std::size_t i = 0; i < expr.children.size(); ++i) {
        if (i > 0) out += " | ";
        const PatternExpr& child = expr.children[i];
        out += child.kind == PatternKind::kAlt ? grouped(child) : FormatPattern(child);
      }
      return out;
    }
    case PatternKind::kOpt:
      return grouped(expr.children.front()) + "?";
    case PatternKind::kPlus:
      return grouped(expr.children.front()) + "+";
    case PatternKind::kMinus:
      return grouped(expr.children.front()) + "-";
  }
  return {};
}

std::string FormatPipeline(const AggExpr& agg) {
  switch (agg.kind) {
    case AggKind::kFreq:
      return "freq(" + (agg.inner.empty() ? agg.rule : FormatPipeline(agg.inner.front())) +
             ")";
    case AggKind::kMi:
      return "MI(" + FormatPipeline(agg.inner.front()) + ")";
    case AggKind::kCoOccur:
      return "co-occur(" + agg.rule + ", " + agg.rule_b + ", " +
             std::to_string(agg.span) + ")";
    case AggKind::kSkipGram:
      return "skip-gram(" + agg.rule + ", " + std::to_string(agg.n) + ", " +
             std::to_string(agg.span) + ")";
  }
  return {};
}

std::string FormatProgram(const TcProgram& program) {
  std::string out;
  for (const RuleDef& rule : program.rules) {
    out += rule.name + " = " + FormatPattern(rule.expr) + "\n";
  }
  out += FormatPipeline(program.pipeline) + "\n";
  return out;
}

bool IsAggregatorName(std::string_view name) {
  return ClassifyAgg(name) != AggName::kNone;
}

}  // namespace akb::tc
