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

#include "activitykb/tc_runtime.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "activitykb/errors.h"

namespace akb::tc {
namespace internal {

struct Node {
  PatternKind kind = PatternKind::kLiteral;
  std::string literal;  // lowercased
  PosTag pos = PosTag::kX;
  std::vector<int> children;
  int target = -1;  // root node of the referenced rule
  bool nullable = false;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<int> rule_roots;  // by rule index
};

}  // namespace internal

namespace {

using internal::Component;
using internal::Graph;
using internal::Node;

bool IsAtom(const Node& node) {
  return node.kind == PatternKind::kLiteral || node.kind == PatternKind::kPosClass;
}

int LowerExpr(Graph& graph, const PatternExpr& expr, const TcProgram& program) {
  Node node;
  node.kind = expr.kind;
  node.pos = expr.pos;
  if (expr.kind == PatternKind::kLiteral) {
    for (char c : expr.text) {
      node.literal += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  for (const PatternExpr& child : expr.children) {
    node.children.push_back(LowerExpr(graph, child, program));
  }
  if (expr.kind == PatternKind::kRuleRef) node.target = program.RuleIndex(expr.text);
  graph.nodes.push_back(std::move(node));
  return static_cast<int>(graph.nodes.size()) - 1;
}

bool ComputeNullable(Graph& graph, int index, std::vector<char>& done) {
  if (done[index]) return graph.nodes[index].nullable;
  const Node& node = graph.nodes[index];
  bool nullable = false;
  switch (node.kind) {
    case PatternKind::kLiteral:
    case PatternKind::kPosClass:
      break;
    case PatternKind::kOpt:
      nullable = true;
      break;
    case PatternKind::kMinus:
      nullable = IsAtom(graph.nodes[node.children.front()]) ||
                 ComputeNullable(graph, node.children.front(), done);
      break;
    case PatternKind::kPlus:
      nullable = ComputeNullable(graph, node.children.front(), done);
      break;
    case PatternKind::kSeq:
      nullable = true;
      for (int child : node.children) {
        if (!ComputeNullable(graph, child, done)) nullable = false;
      }
      break;
    case PatternKind::kAlt:
      for (int child : node.children) {
        if (ComputeNullable(graph, child, done)) nullable = true;
      }
      break;
    case PatternKind::kRuleRef:
      nullable = ComputeNullable(graph, node.target, done);
      break;
  }
  graph.nodes[index].nullable = nullable;
  done[index] = 1;
  return nullable;
}

std::shared_ptr<const Graph> BuildGraph(const TcProgram& program) {
  auto graph = std::make_shared<Graph>();
  for (const RuleDef& rule : program.rules) {
    graph->rule_roots.push_back(LowerExpr(*graph, rule.expr, program));
  }
  for (Node& node : graph->nodes) {
    if (node.kind == PatternKind::kRuleRef) node.target = graph->rule_roots[node.target];
  }
  std::vector<char> done(graph->nodes.size(), 0);
  for (std::size_t i = 0; i < graph->nodes.size(); ++i) {
    ComputeNullable(*graph, static_cast<int>(i), done);
  }
  return graph;
}

class Evaluator {
 public:
  Evaluator(const Graph& graph, std::span<const TaggedToken> sentence,
            const std::vector<Component>& components)
      : graph_(graph), sentence_(sentence), components_(components) {}

  // On failure the capture state is left exactly as it was on entry.
  bool Eval(int index, std::size_t pos, std::size_t& end, bool dropping, int depth) {
    const Node& node = graph_.nodes[index];
    switch (node.kind) {
      case PatternKind::kLiteral:
      case PatternKind::kPosClass: {
        if (pos >= sentence_.size()) return false;
        const TaggedToken& token = sentence_[pos];
        bool ok = node.kind == PatternKind::kLiteral ? token.lemma == node.literal
                                                     : token.pos == node.pos;
        if (!ok) return false;
        if (!dropping) kept.push_back(static_cast<std::uint32_t>(pos));
        end = pos + 1;
        return true;
      }
      case PatternKind::kSeq: {
        Mark mark = Save();
        std::size_t cur = pos;
        for (int child : node.children) {
          std::size_t next = cur;
          if (!Eval(child, cur, next, dropping, depth)) {
            Restore(mark);
            return false;
          }
          cur = next;
        }
        end = cur;
        return true;
      }
      case PatternKind::kAlt:
        for (int child : node.children) {
          if (Eval(child, pos, end, dropping, depth)) return true;
        }
        return false;
      case PatternKind::kOpt:
        if (!Eval(node.children.front(), pos, end, dropping, depth)) end = pos;
        return true;
      case PatternKind::kPlus: {
        std::size_t cur = pos;
        if (!Eval(node.children.front(), pos, cur, dropping, depth)) return false;
        while (true) {
          Mark mark = Save();
          std::size_t next = cur;
          if (!Eval(node.children.front(), cur, next, dropping, depth)) break;
          if (next == cur) {
            Restore(mark);
            break;
          }
          cur = next;
        }
        end = cur;
        return true;
      }
      case PatternKind::kMinus: {
        // A dropped single-token atom is optional; a dropped rule or group
        // must still match.
        int child = node.children.front();
        if (Eval(child, pos, end, /*dropping=*/true, depth)) return true;
        if (IsAtom(graph_.nodes[child])) {
          end = pos;
          return true;
        }
        return false;
      }
      case PatternKind::kRuleRef: {
        const Component* component = nullptr;
        if (depth == 0) {
          for (const Component& c : components_) {
            if (c.node == index) component = &c;
          }
        }
        std::size_t kept_before = kept.size();
        if (!Eval(node.target, pos, end, dropping, depth + 1)) return false;
        if (component != nullptr && end > pos) {
          SubLabel sub;
          sub.rule = component->rule;
          sub.role = component->role;
          sub.kept.assign(kept.begin() + static_cast<std::ptrdiff_t>(kept_before),
                          kept.end());
          sub.label = JoinLemmas(sentence_, sub.kept);
          subs.push_back(std::move(sub));
        }
        return true;
      }
    }
    return false;
  }

  std::vector<std::uint32_t> kept;
  std::vector<SubLabel> subs;

 private:
  struct Mark {
    std::size_t kept;
    std::size_t subs;
  };
  Mark Save() const { return {kept.size(), subs.size()}; }
  void Restore(Mark mark) {
    kept.resize(mark.kept);
    subs.resize(mark.subs);
  }

  const Graph& graph_;
  std::span<const TaggedToken> sentence_;
  const std::vector<Component>& components_;
};

void PipelineRules(const AggExpr& agg, std::vector<std::string>& out) {
  auto add = [&out](const std::string& name) {
    if (!name.empty() && std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(name);
    }
  };
  add(agg.rule);
  add(agg.rule_b);
  for (const AggExpr& inner : agg.inner) PipelineRules(inner, out);
}

}  // namespace

class PatternFactory {
 public:
  static CompiledPattern Make(std::shared_ptr<const Graph> graph,
                              const CheckedProgram& checked, std::string_view rule,
                              std::vector<std::string>* warnings) {
    const TcProgram& program = checked.program;
    int index = program.RuleIndex(rule);
    if (index < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no rule named '" + std::string(rule) + "'");
    }
    CompiledPattern pattern;
    pattern.rule_ = std::string(rule);
    pattern.root_ = graph->rule_roots[index];
    pattern.nullable_ = graph->nodes[pattern.root_].nullable;
    if (pattern.nullable_ && warnings != nullptr) {
      warnings->push_back("pattern '" + pattern.rule_ + "' can match empty");
    }
    const RuleDef& def = program.rules[index];
    if (std::optional<PairShape> shape = AnalyzePairShape(def.expr)) {
      const Node& root = graph->nodes[pattern.root_];
      for (std::size_t i = 0; i < shape->components.size(); ++i) {
        int node = root.children[shape->components[i]];
        if (graph->nodes[node].kind == PatternKind::kOpt) {
          node = graph->nodes[node].children.front();
        }
        Component component;
        component.node = node;
        component.rule = shape->component_rules[i];
        if (i == shape->head) {
          component.role = ComponentRole::kHead;
        } else if (component.rule == shape->anchor_rule) {
          component.role = ComponentRole::kAnchor;
        }
        pattern.components_.push_back(std::move(component));
      }
      std::set<std::string> seen;
      for (const std::string& name : shape->component_rules) {
        if (seen.insert(name).second) pattern.tracked_rules_.push_back(name);
      }
    }
    pattern.graph_ = std::move(graph);
    return pattern;
  }
};

std::optional<AnchoredMatch> CompiledPattern::MatchAt(
    std::span<const TaggedToken> sentence, std::size_t pos) const {
  Evaluator eval(*graph_, sentence, components_);
  std::size_t end = pos;
  if (!eval.Eval(root_, pos, end, /*dropping=*/false, /*depth=*/0)) {
    return std::nullopt;
  }
  AnchoredMatch match;
  match.begin = pos;
  match.end = end;
  match.kept = std::move(eval.kept);
  match.sublabels = std::move(eval.subs);
  return match;
}

CompiledPattern CompileRule(const CheckedProgram& program, std::string_view rule,
                            std::vector<std::string>* warnings) {
  return PatternFactory::Make(BuildGraph(program.program), program, rule, warnings);
}

const CompiledPattern* CompiledProgram::Find(std::string_view rule) const {
  for (const CompiledPattern& pattern : patterns) {
    if (pattern.rule() == rule) return &pattern;
  }
  return nullptr;
}

CompiledProgram Compile(const CheckedProgram& program) {
  std::shared_ptr<const Graph> graph = BuildGraph(program.program);
  std::vector<std::string> rules;
  PipelineRules(program.program.pipeline, rules);
  CompiledProgram out;
  for (const std::string& rule : rules) {
    out.patterns.push_back(PatternFactory::Make(graph, program, rule, &out.warnings));
  }
  return out;
}

std::string JoinLemmas(std::span<const TaggedToken> sentence,
                       std::span<const std::uint32_t> kept) {
  std::string label;
  for (std::uint32_t offset : kept) {
    if (!label.empty()) label += ' ';
    label += sentence[offset].lemma;
  }
  return label;
}

std::vector<Match> ScanSentence(const CompiledPattern& pattern,
                                std::span<const TaggedToken> sentence) {
  std::vector<Match> matches;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    std::optional<AnchoredMatch> hit = pattern.MatchAt(sentence, pos);
    if (!hit || hit->end == pos) {
      ++pos;
      continue;
    }
    Match match;
    match.rule = pattern.rule();
    match.doc_id = sentence[pos].doc_id;
    match.sent_id = sentence[pos].sent_id;
    match.start_idx = sentence[pos].token_idx;
    match.end_idx = sentence[hit->end - 1].token_idx + 1;
    match.label = JoinLemmas(sentence, hit->kept);
    match.kept = std::move(hit->kept);
    match.tracked = pattern.tracked();
    match.sublabels = std::move(hit->sublabels);
    matches.push_back(std::move(match));
    pos = hit->end;
  }
  return matches;
}

std::vector<std::pair<std::string, std::string>> EmitPairs(const Match& match) {
  if (!match.tracked) {
    throw Error(ErrorCode::kContract,
                "match of rule '" + match.rule + "' has no tracked components");
  }
  const SubLabel* head = nullptr;
  for (const SubLabel& sub : match.sublabels) {
    if (sub.role == ComponentRole::kHead) head = &sub;
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (head == nullptr || head->label.empty()) return pairs;
  for (const SubLabel& sub : match.sublabels) {
    if (sub.role == ComponentRole::kAnchor && !sub.label.empty()) {
      pairs.emplace_back(sub.label, head->label);
    }
  }
  return pairs;
}

}  // namespace akb::tc
