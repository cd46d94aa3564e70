// Copyright 2026 The dlk Authors
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

#include <fmt/format.h>

#include <algorithm>
#include <utility>

#include "dlk/syntax.h"

namespace dlk {

NodePtr make_identifier(std::string name, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kIdentifier;
  n->text = std::move(name);
  n->span = span;
  return n;
}

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  n->span = span;
  return n;
}

NodePtr make_binder(NodeKind kind, std::string var, TypeSyntax type,
                    NodePtr body, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->text = std::move(var);
  n->type = std::move(type);
  n->children = {std::move(body)};
  n->span = span;
  return n;
}

NodePtr make_relation(std::string op, NodePtr lhs, NodePtr rhs, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kRelation;
  n->text = std::move(op);
  n->children = {std::move(lhs), std::move(rhs)};
  n->span = span;
  return n;
}

NodePtr make_turnstile(std::vector<NodePtr> antecedents,
                       std::vector<NodePtr> consequents, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kTurnstile;
  n->antecedents = antecedents.size();
  n->children = std::move(antecedents);
  for (auto& c : consequents) n->children.push_back(std::move(c));
  n->span = span;
  return n;
}

NodePtr make_opaque(std::string display, TypeSyntax type, Span span) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::kOpaque;
  n->text = std::move(display);
  n->type = std::move(type);
  n->span = span;
  return n;
}

TypeSyntax make_type(std::string name, std::vector<TypeSyntax> args) {
  TypeSyntax t;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

bool is_binder(NodeKind kind) {
  return kind == NodeKind::kForall || kind == NodeKind::kExists ||
         kind == NodeKind::kLambda;
}

bool is_connective(NodeKind kind) {
  return kind == NodeKind::kNot || kind == NodeKind::kAnd ||
         kind == NodeKind::kOr || kind == NodeKind::kImplies ||
         kind == NodeKind::kIff;
}

bool is_sentence_shaped(const Node& node) {
  switch (node.kind) {
    case NodeKind::kForall:
    case NodeKind::kExists:
    case NodeKind::kRelation:
    case NodeKind::kJudgment:
    case NodeKind::kTurnstile:
    case NodeKind::kProofTurnstile:
      return true;
    default:
      return is_connective(node.kind);
  }
}

bool structurally_equal(const TypeSyntax& a, const TypeSyntax& b) {
  if (a.hole != b.hole || a.name != b.name || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!structurally_equal(a.args[i], b.args[i])) return false;
  }
  return true;
}

namespace {

bool same_type(const std::optional<TypeSyntax>& a,
               const std::optional<TypeSyntax>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || structurally_equal(*a, *b);
}

bool same_shape(const Node& a, const Node& b) {
  return a.kind == b.kind && a.antecedents == b.antecedents &&
         a.children.size() == b.children.size() &&
         a.names.size() == b.names.size() && same_type(a.type, b.type);
}

// Bound-variable environments for alpha comparison: innermost last.
using Scope = std::vector<std::string>;

int lookup(const Scope& scope, const std::string& name) {
  for (std::size_t i = scope.size(); i-- > 0;) {
    if (scope[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool alpha(const Node& a, const Node& b, Scope& sa, Scope& sb) {
  if (!same_shape(a, b)) return false;
  if (a.kind == NodeKind::kIdentifier) {
    int ia = lookup(sa, a.text);
    int ib = lookup(sb, b.text);
    if (ia != ib) return false;
    return ia >= 0 || a.text == b.text;
  }
  if (is_binder(a.kind)) {
    sa.push_back(a.text);
    sb.push_back(b.text);
    bool ok = alpha(*a.children[0], *b.children[0], sa, sb);
    sa.pop_back();
    sb.pop_back();
    return ok;
  }
  if (a.kind == NodeKind::kLet) {
    for (const auto& n : a.names) sa.push_back(n);
    for (const auto& n : b.names) sb.push_back(n);
    bool ok = true;
    for (std::size_t i = 0; ok && i < a.children.size(); ++i) {
      ok = alpha(*a.children[i], *b.children[i], sa, sb);
    }
    sa.resize(sa.size() - a.names.size());
    sb.resize(sb.size() - b.names.size());
    return ok;
  }
  if (a.text != b.text) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!alpha(*a.children[i], *b.children[i], sa, sb)) return false;
  }
  return true;
}

void collect_free(const Node& n, Scope& bound, std::set<std::string>& out) {
  switch (n.kind) {
    case NodeKind::kIdentifier:
      if (lookup(bound, n.text) < 0) out.insert(n.text);
      return;
    case NodeKind::kForall:
    case NodeKind::kExists:
    case NodeKind::kLambda:
      bound.push_back(n.text);
      collect_free(*n.children[0], bound, out);
      bound.pop_back();
      return;
    case NodeKind::kLet:
      for (const auto& name : n.names) bound.push_back(name);
      for (const auto& c : n.children) collect_free(*c, bound, out);
      bound.resize(bound.size() - n.names.size());
      return;
    default:
      for (const auto& c : n.children) collect_free(*c, bound, out);
  }
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = fmt::format("{}_{}", base, i);
    if (!avoid.count(candidate)) return candidate;
  }
}

NodePtr with_children(const NodePtr& node, std::vector<NodePtr> children) {
  auto copy = std::make_shared<Node>(*node);
  copy->children = std::move(children);
  return copy;
}

}  // namespace

bool structurally_equal(const Node& a, const Node& b) {
  if (!same_shape(a, b) || a.text != b.text || a.names != b.names)
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

bool alpha_equal(const Node& a, const Node& b) {
  Scope sa;
  Scope sb;
  return alpha(a, b, sa, sb);
}

std::set<std::string> free_identifiers(const Node& node) {
  std::set<std::string> out;
  Scope bound;
  collect_free(node, bound, out);
  return out;
}

bool mentions(const Node& node, std::string_view name) {
  return free_identifiers(node).count(std::string(name)) > 0;
}

NodePtr substitute(const NodePtr& node, const std::string& name,
                   const NodePtr& value) {
  switch (node->kind) {
    case NodeKind::kIdentifier:
      return node->text == name ? value : node;
    case NodeKind::kForall:
    case NodeKind::kExists:
    case NodeKind::kLambda: {
      if (node->text == name || !mentions(*node->children[0], name))
        return node;
      std::set<std::string> value_free = free_identifiers(*value);
      NodePtr body = node->children[0];
      std::string var = node->text;
      if (value_free.count(var)) {
        std::set<std::string> avoid = value_free;
        auto body_free = free_identifiers(*body);
        avoid.insert(body_free.begin(), body_free.end());
        avoid.insert(name);
        std::string renamed = fresh_name(var, avoid);
        body = substitute(body, var, make_identifier(renamed));
        var = renamed;
      }
      auto copy = std::make_shared<Node>(*node);
      copy->text = var;
      copy->children = {substitute(body, name, value)};
      return copy;
    }
    case NodeKind::kLet: {
      if (std::find(node->names.begin(), node->names.end(), name) !=
          node->names.end())
        return node;
      if (!mentions(*node, name)) return node;
      std::set<std::string> value_free = free_identifiers(*value);
      auto copy = std::make_shared<Node>(*node);
      std::set<std::string> avoid = value_free;
      auto own_free = free_identifiers(*node);
      avoid.insert(own_free.begin(), own_free.end());
      avoid.insert(node->names.begin(), node->names.end());
      avoid.insert(name);
      for (auto& bound : copy->names) {
        if (!value_free.count(bound)) continue;
        std::string renamed = fresh_name(bound, avoid);
        avoid.insert(renamed);
        NodePtr id = make_identifier(renamed);
        for (auto& c : copy->children) c = substitute(c, bound, id);
        bound = renamed;
      }
      for (auto& c : copy->children) c = substitute(c, name, value);
      return copy;
    }
    default: {
      if (node->children.empty()) return node;
      std::vector<NodePtr> children;
      children.reserve(node->children.size());
      bool changed = false;
      for (const auto& c : node->children) {
        children.push_back(substitute(c, name, value));
        changed = changed || children.back() != c;
      }
      return changed ? with_children(node, std::move(children)) : node;
    }
  }
}

std::string_view keyword_name(StepKeyword keyword) {
  switch (keyword) {
    case StepKeyword::kAssume:
      return "assume";
    case StepKeyword::kFix:
      return "fix";
    case StepKeyword::kHave:
      return "have";
    case StepKeyword::kObtain:
      return "obtain";
    case StepKeyword::kConclude:
      return "conclude";
  }
  return "";
}

namespace {

bool equal_nodes(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}

bool equal_steps(const ProofStep& a, const ProofStep& b) {
  if (a.number != b.number || a.depth != b.depth || a.keyword != b.keyword ||
      a.fix_name != b.fix_name || a.rule != b.rule || a.refs != b.refs)
    return false;
  return equal_nodes(a.formula, b.formula) &&
         equal_nodes(a.payload, b.payload) && same_type(a.fix_type, b.fix_type);
}

}  // namespace

bool structurally_equal(const Declaration& a, const Declaration& b) {
  if (a.kind != b.kind || a.name != b.name || a.packs != b.packs ||
      a.expected_code != b.expected_code ||
      a.params.size() != b.params.size() || a.steps.size() != b.steps.size() ||
      a.inner.size() != b.inner.size() || !same_type(a.type, b.type) ||
      !equal_nodes(a.body, b.body))
    return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name ||
        !structurally_equal(a.params[i].type, b.params[i].type))
      return false;
  }
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (!equal_steps(a.steps[i], b.steps[i])) return false;
  }
  for (std::size_t i = 0; i < a.inner.size(); ++i) {
    if (!structurally_equal(a.inner[i], b.inner[i])) return false;
  }
  return true;
}

bool structurally_equal(const SourceFile& a, const SourceFile& b) {
  if (a.declarations.size() != b.declarations.size()) return false;
  for (std::size_t i = 0; i < a.declarations.size(); ++i) {
    if (!structurally_equal(a.declarations[i], b.declarations[i]))
      return false;
  }
  return true;
}

namespace {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kIdentifier: return "Identifier";
    case NodeKind::kNumeral: return "Numeral";
    case NodeKind::kString: return "String";
    case NodeKind::kBoolean: return "Boolean";
    case NodeKind::kOpaque: return "Opaque";
    case NodeKind::kNot: return "Not";
    case NodeKind::kAnd: return "And";
    case NodeKind::kOr: return "Or";
    case NodeKind::kImplies: return "Implies";
    case NodeKind::kIff: return "Iff";
    case NodeKind::kTurnstile: return "Turnstile";
    case NodeKind::kProofTurnstile: return "ProofTurnstile";
    case NodeKind::kRelation: return "Relation";
    case NodeKind::kJudgment: return "Judgment";
    case NodeKind::kForall: return "Forall";
    case NodeKind::kExists: return "Exists";
    case NodeKind::kLambda: return "Lambda";
    case NodeKind::kApply: return "Apply";
    case NodeKind::kCall: return "Call";
    case NodeKind::kConditional: return "Conditional";
    case NodeKind::kQuote: return "Quote";
    case NodeKind::kAbstract: return "Abstract";
    case NodeKind::kLet: return "Let";
    case NodeKind::kEmptySet: return "EmptySet";
    case NodeKind::kSingleton: return "Singleton";
  }
  return "?";
}

}  // namespace

std::string dump_ast(const Node& node, int indent) {
  std::string out(2 * indent, ' ');
  out += kind_name(node.kind);
  if (!node.text.empty()) out += fmt::format(" '{}'", node.text);
  if (node.type) out += fmt::format(" : {}", render(*node.type));
  if (node.kind == NodeKind::kTurnstile) {
    out += fmt::format(" antecedents={}", node.antecedents);
  }
  if (!node.names.empty()) {
    out += fmt::format(" names=[{}]", fmt::join(node.names, ", "));
  }
  if (node.span.valid()) {
    out += fmt::format(" @{}:{}+{}", node.span.line, node.span.column,
                       node.span.length);
  }
  out += "\n";
  for (const auto& c : node.children) out += dump_ast(*c, indent + 1);
  return out;
}

std::string dump_ast(const SourceFile& file) {
  std::string out;
  for (const Declaration& d : file.declarations) {
    std::string head = render(d);
    head = head.substr(0, head.find('\n'));
    out += fmt::format("Declaration @{}:{}: {}\n", d.span.line, d.span.column,
                       head);
    if (d.body) out += dump_ast(*d.body, 1);
    for (const ProofStep& s : d.steps) {
      out += fmt::format("  Step {} depth={} {}", s.number, s.depth,
                         keyword_name(s.keyword));
      if (!s.rule.empty()) out += " by " + s.rule;
      out += "\n";
      if (s.formula) out += dump_ast(*s.formula, 2);
      if (s.payload) out += dump_ast(*s.payload, 2);
    }
  }
  return out;
}

}  // namespace dlk
