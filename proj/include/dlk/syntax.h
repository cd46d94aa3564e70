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

#ifndef DLK_SYNTAX_H_
#define DLK_SYNTAX_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dlk/diagnostic.h"

namespace dlk {

// Surface type annotation, e.g. `Fun(Nat, Bool)` or the hole `?h`.
// Resolution into a semantic Type happens in the type checker, where theory
// packs supply additional type names.
struct TypeSyntax {
  std::string name;  // base/constructor/alias name; hole name (may be empty)
  std::vector<TypeSyntax> args;
  bool hole = false;
  Span span;
};

enum class NodeKind {
  kIdentifier,
  kNumeral,
  kString,
  kBoolean,
  kOpaque,  // terminal with no string form (only built programmatically)
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kTurnstile,       // children: antecedents then consequents
  kProofTurnstile,  // children: proof term, sentence
  kRelation,        // text: operator; children: lhs, rhs
  kJudgment,        // `t : T`; children: t; type: T
  kForall,
  kExists,
  kLambda,       // `[x: T] -> body`
  kApply,        // `f[a, ...]`; children: head, args...
  kCall,         // `p.[a, ...]`; children: head, args...
  kConditional,  // `(b ? x : y)`
  kQuote,
  kAbstract,
  kLet,  // `Let {v := x, ...}, body`; names parallel to children[0..n-1]
  kEmptySet,
  kSingleton,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::kIdentifier;
  Span span;
  // Identifier name, literal text, relation operator, or bound variable.
  std::string text;
  std::vector<NodePtr> children;
  // Binder annotation, judgment type, or opaque constant type.
  std::optional<TypeSyntax> type;
  // Number of antecedents of a turnstile.
  std::size_t antecedents = 0;
  // Let-bound names.
  std::vector<std::string> names;
};

// Node factories. Spans default to "none"; the parser fills them in.
NodePtr make_identifier(std::string name, Span span = {});
NodePtr make_node(NodeKind kind, std::vector<NodePtr> children,
                  Span span = {});
NodePtr make_binder(NodeKind kind, std::string var, TypeSyntax type,
                    NodePtr body, Span span = {});
NodePtr make_relation(std::string op, NodePtr lhs, NodePtr rhs,
                      Span span = {});
NodePtr make_turnstile(std::vector<NodePtr> antecedents,
                       std::vector<NodePtr> consequents, Span span = {});
NodePtr make_opaque(std::string display, TypeSyntax type, Span span = {});
TypeSyntax make_type(std::string name, std::vector<TypeSyntax> args = {});

bool is_binder(NodeKind kind);
bool is_connective(NodeKind kind);
// Nodes that can only be sentences: connectives, quantifiers, relations,
// judgments, turnstiles.
bool is_sentence_shaped(const Node& node);

// Structural equality ignoring spans (bound names must match exactly).
bool structurally_equal(const Node& a, const Node& b);
bool structurally_equal(const TypeSyntax& a, const TypeSyntax& b);
// Equality up to renaming of bound variables.
bool alpha_equal(const Node& a, const Node& b);

std::set<std::string> free_identifiers(const Node& node);
bool mentions(const Node& node, std::string_view name);

// Capture-avoiding replacement of free occurrences of `name` by `value`.
NodePtr substitute(const NodePtr& node, const std::string& name,
                   const NodePtr& value);

// --- Declarations and files ---------------------------------------------

enum class StepKeyword { kAssume, kFix, kHave, kObtain, kConclude };

std::string_view keyword_name(StepKeyword keyword);

struct ProofStep {
  int number = 0;
  Span span;
  int column = 0;  // column of the step keyword
  int depth = 0;   // hypothesis-box nesting derived from indentation
  StepKeyword keyword = StepKeyword::kHave;
  NodePtr formula;  // null for `fix`
  std::string fix_name;
  std::optional<TypeSyntax> fix_type;
  std::string rule;
  Span rule_span;
  std::vector<int> refs;
  NodePtr payload;
};

struct Param {
  std::string name;
  TypeSyntax type;
  Span span;
};

enum class DeclKind {
  kTheoryImport,
  kConstant,
  kTypeAlias,
  kAxiom,
  kDefinition,
  kProcedure,
  kEval,
  kProof,
  kExpectFailure,
};

struct Declaration {
  DeclKind kind = DeclKind::kDefinition;
  Span span;
  std::string name;
  Span name_span;
  std::vector<std::string> packs;
  std::vector<Param> params;
  std::optional<TypeSyntax> type;
  NodePtr body;  // definiens, axiom statement, proof goal, eval expression
  std::vector<ProofStep> steps;
  std::string expected_code;
  std::vector<Declaration> inner;
};

struct SourceFile {
  std::string path;
  std::string content;
  std::vector<Declaration> declarations;
};

// Parsing. All failures are KernelError with code E001.
SourceFile parse_file(std::string_view text, std::string path = "<input>");
NodePtr parse_formula(std::string_view text);
TypeSyntax parse_type(std::string_view text);

// Canonical rendering. parse(render(x)) is structurally equal to x.
std::string render(const Node& node);
std::string render(const TypeSyntax& type);
std::string render(const Declaration& decl);
std::string render(const SourceFile& file);

bool structurally_equal(const Declaration& a, const Declaration& b);
bool structurally_equal(const SourceFile& a, const SourceFile& b);

// Tree dump with spans, one node per line.
std::string dump_ast(const Node& node, int indent = 0);
std::string dump_ast(const SourceFile& file);

}  // namespace dlk

#endif  // DLK_SYNTAX_H_
