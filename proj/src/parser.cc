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

#include <utility>

#include "dlk/syntax.h"
#include "lexer.h"

namespace dlk {

namespace {

using internal::Token;
using internal::TokenKind;

bool is_decl_keyword(std::string_view word) {
  return word == "theory" || word == "const" || word == "type" ||
         word == "axiom" || word == "def" || word == "proc" ||
         word == "eval" || word == "proof" || word == "expect_failure";
}

bool is_relation_word(std::string_view word) {
  return word == "in" || word == "subset" || word == "sqsubset" ||
         word == "sqsubseteq";
}

bool is_relation_symbol(std::string_view sym) {
  return sym == "=" || sym == "!=" || sym == "<" || sym == ">" ||
         sym == "<=" || sym == ">=";
}

struct Flags {
  bool comma = false;  // a top-level comma may separate turnstile operands
  bool colon = true;   // `t : T` judgments are recognised
};

class Parser {
 public:
  explicit Parser(std::string_view text)
      : text_(text), tokens_(internal::tokenize(text)) {}

  SourceFile file(std::string path) {
    SourceFile out;
    out.path = std::move(path);
    out.content = std::string(text_);
    while (!at_end()) out.declarations.push_back(declaration());
    return out;
  }

  NodePtr lone_formula() {
    NodePtr f = formula(Flags{true, true});
    expect_end();
    return f;
  }

  TypeSyntax lone_type() {
    TypeSyntax t = type();
    expect_end();
    return t;
  }

 private:
  // --- token helpers ---
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool at_end() const { return peek().kind == TokenKind::kEnd; }
  bool is_symbol(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::kSymbol && peek(ahead).text == s;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::kIdent && peek(ahead).text == w;
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    last_ = t.span;
    return t;
  }

  [[noreturn]] void unexpected(std::string_view wanted) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::kEnd
                            ? std::string("end of input")
                            : fmt::format("'{}'", t.text);
    if (t.kind == TokenKind::kString) found = "string literal";
    Span span = t.span;
    if (t.kind == TokenKind::kEnd && !open_.empty()) {
      fail(codes::kSyntax, open_.back(),
           fmt::format("unclosed '{}': expected {} before end of input",
                       text_.substr(open_.back().offset, 1), wanted));
    }
    fail(codes::kSyntax, span,
         fmt::format("expected {}, found {}", wanted, found));
  }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) unexpected(fmt::format("'{}'", s));
    take();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) unexpected(fmt::format("'{}'", w));
    take();
  }
  std::string identifier(std::string_view what = "identifier") {
    const Token& t = peek();
    if (t.kind != TokenKind::kIdent || internal::is_reserved(t.text)) {
      unexpected(what);
    }
    return take().text;
  }
  void expect_end() {
    if (!at_end()) unexpected("end of input");
  }

  // Opening bracket bookkeeping for "unclosed" diagnostics.
  void open(const Span& s) { open_.push_back(s); }
  void close(std::string_view sym) {
    expect_symbol(sym);
    open_.pop_back();
  }

  Span from(const Span& start) const { return cover(start, last_); }

  // --- types ---
  TypeSyntax type() {
    const Token& t = peek();
    if (t.kind == TokenKind::kHole) {
      TypeSyntax out;
      out.hole = true;
      out.name = t.text;
      out.span = t.span;
      take();
      return out;
    }
    if (is_symbol("?")) {
      TypeSyntax out;
      out.hole = true;
      out.span = take().span;
      return out;
    }
    Span start = t.span;
    TypeSyntax out;
    out.name = identifier("type");
    if (is_symbol("(")) {
      open(peek().span);
      take();
      out.args.push_back(type());
      while (is_symbol(",")) {
        take();
        out.args.push_back(type());
      }
      close(")");
    }
    out.span = from(start);
    return out;
  }

  // --- formulas ---
  bool starts_formula() const {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kString:
        return true;
      case TokenKind::kIdent:
        return !internal::is_reserved(t.text) || t.text == "not" ||
               t.text == "forall" || t.text == "exists" ||
               t.text == "quote" || t.text == "abstract" ||
               t.text == "provable" || t.text == "Let" ||
               t.text == "True" || t.text == "False";
      case TokenKind::kSymbol:
        return t.text == "(" || t.text == "[" || t.text == "{" ||
               t.text == "|-";
      default:
        return false;
    }
  }

  NodePtr formula(Flags flags) {
    Span start = peek().span;
    if (is_symbol("|-")) return prefix_turnstile(flags);
    std::vector<NodePtr> antecedents{iff(flags)};
    if (flags.comma) {
      while (is_symbol(",")) {
        take();
        antecedents.push_back(iff(flags));
      }
    }
    if (!is_symbol("|-")) {
      if (antecedents.size() > 1) unexpected("'|-'");
      return antecedents.front();
    }
    take();
    std::vector<NodePtr> consequents = consequent_list(flags);
    return make_turnstile(std::move(antecedents), std::move(consequents),
                          from(start));
  }

  std::vector<NodePtr> consequent_list(Flags flags) {
    std::vector<NodePtr> out;
    if (!starts_formula() || is_symbol("|-")) return out;
    out.push_back(iff(flags));
    if (flags.comma) {
      while (is_symbol(",")) {
        take();
        out.push_back(iff(flags));
      }
    }
    return out;
  }

  NodePtr prefix_turnstile(Flags flags) {
    Span start = peek().span;
    expect_symbol("|-");
    if (is_symbol("^")) {
      take();
      NodePtr proof = postfix(flags);
      NodePtr body = iff(flags);
      return make_node(NodeKind::kProofTurnstile, {proof, body},
                       from(start));
    }
    std::vector<NodePtr> consequents = consequent_list(flags);
    if (consequents.empty()) unexpected("formula after '|-'");
    return make_turnstile({}, std::move(consequents), from(start));
  }

  // Body of a quantifier, lambda, or Let: extends as far right as possible
  // and may be a prefix turnstile.
  NodePtr open_body(Flags flags) {
    flags.comma = false;
    if (is_symbol("|-")) return prefix_turnstile(flags);
    return iff(flags);
  }

  NodePtr iff(Flags flags) {
    Span start = peek().span;
    NodePtr lhs = implies(flags);
    while (is_symbol("<=>")) {
      take();
      NodePtr rhs = implies(flags);
      lhs = make_node(NodeKind::kIff, {lhs, rhs}, from(start));
    }
    return lhs;
  }

  NodePtr implies(Flags flags) {
    Span start = peek().span;
    NodePtr lhs = disjunction(flags);
    if (is_symbol("=>")) {
      take();
      NodePtr rhs = implies(flags);
      return make_node(NodeKind::kImplies, {lhs, rhs}, from(start));
    }
    return lhs;
  }

  NodePtr disjunction(Flags flags) {
    Span start = peek().span;
    NodePtr lhs = conjunction(flags);
    while (is_symbol("\\/")) {
      take();
      NodePtr rhs = conjunction(flags);
      lhs = make_node(NodeKind::kOr, {lhs, rhs}, from(start));
    }
    return lhs;
  }

  NodePtr conjunction(Flags flags) {
    Span start = peek().span;
    NodePtr lhs = unary(flags);
    while (is_symbol("/\\")) {
      take();
      NodePtr rhs = unary(flags);
      lhs = make_node(NodeKind::kAnd, {lhs, rhs}, from(start));
    }
    return lhs;
  }

  NodePtr unary(Flags flags) {
    Span start = peek().span;
    if (is_word("not")) {
      take();
      NodePtr operand = unary(flags);
      return make_node(NodeKind::kNot, {operand}, from(start));
    }
    if (is_word("forall") || is_word("exists")) {
      NodeKind kind =
          peek().text == "forall" ? NodeKind::kForall : NodeKind::kExists;
      take();
      auto [var, type] = binder();
      expect_symbol("->");
      NodePtr body = open_body(flags);
      return make_binder(kind, std::move(var), std::move(type), body,
                         from(start));
    }
    return relation(flags);
  }

  std::pair<std::string, TypeSyntax> binder() {
    open(peek().span);
    expect_symbol("[");
    std::string var = identifier("bound variable");
    if (!is_symbol(":")) {
      if (is_symbol(",")) {
        fail(codes::kSyntax, peek().span,
             "a binder introduces exactly one variable",
             {"nest the binders: forall [x: T] -> forall [y: T] -> ..."});
      }
      unexpected("':' and a type annotation in binder");
    }
    take();
    TypeSyntax type = this->type();
    close("]");
    return {std::move(var), std::move(type)};
  }

  NodePtr relation(Flags flags) {
    Span start = peek().span;
    NodePtr lhs = postfix(flags);
    const Token& t = peek();
    bool word = t.kind == TokenKind::kIdent && is_relation_word(t.text);
    bool sym = t.kind == TokenKind::kSymbol && is_relation_symbol(t.text);
    if (word || sym) {
      std::string op = take().text;
      NodePtr rhs = postfix(flags);
      return make_relation(std::move(op), lhs, rhs, from(start));
    }
    if (flags.colon && is_symbol(":")) {
      take();
      TypeSyntax type = this->type();
      auto node = std::make_shared<Node>();
      node->kind = NodeKind::kJudgment;
      node->children = {lhs};
      node->type = std::move(type);
      node->span = from(start);
      return node;
    }
    return lhs;
  }

  std::vector<NodePtr> arguments(std::string_view closer) {
    std::vector<NodePtr> args;
    Flags inner{false, true};
    if (is_symbol(closer)) return args;
    args.push_back(formula(inner));
    while (is_symbol(",")) {
      take();
      args.push_back(formula(inner));
    }
    return args;
  }

  NodePtr postfix(Flags flags) {
    Span start = peek().span;
    NodePtr head = primary(flags);
    while (is_symbol("[") || is_symbol(".[")) {
      NodeKind kind = is_symbol("[") ? NodeKind::kApply : NodeKind::kCall;
      open(peek().span);
      take();
      std::vector<NodePtr> children{head};
      for (auto& a : arguments("]")) children.push_back(std::move(a));
      if (children.size() == 1) unexpected("argument");
      close("]");
      head = make_node(kind, std::move(children), from(start));
    }
    return head;
  }

  NodePtr primary(Flags flags) {
    const Token& t = peek();
    Span start = t.span;
    switch (t.kind) {
      case TokenKind::kNumber: {
        auto n = make_node(NodeKind::kNumeral, {}, t.span);
        std::const_pointer_cast<Node>(n)->text = take().text;
        return n;
      }
      case TokenKind::kString: {
        auto n = make_node(NodeKind::kString, {}, t.span);
        std::const_pointer_cast<Node>(n)->text = take().text;
        return n;
      }
      case TokenKind::kIdent:
        break;
      case TokenKind::kSymbol:
        if (t.text == "(") return parenthesized();
        if (t.text == "[") return lambda(flags);
        if (t.text == "{") return set_literal();
        unexpected("formula or term");
      default:
        unexpected("formula or term");
    }
    const std::string& w = t.text;
    if (w == "True" || w == "False") {
      auto n = make_node(NodeKind::kBoolean, {}, t.span);
      std::const_pointer_cast<Node>(n)->text = take().text;
      return n;
    }
    if (w == "quote" || w == "abstract" || w == "provable") {
      std::string word = take().text;
      open(peek().span);
      expect_symbol("(");
      NodePtr inner = formula(Flags{true, true});
      close(")");
      if (word == "provable") {
        return make_turnstile({}, {inner}, from(start));
      }
      return make_node(word == "quote" ? NodeKind::kQuote
                                       : NodeKind::kAbstract,
                       {inner}, from(start));
    }
    if (w == "Let") return let(flags);
    if (w == "not" || w == "forall" || w == "exists") return unary(flags);
    if (internal::is_reserved(w)) unexpected("formula or term");
    take();
    return make_identifier(w, start);
  }

  NodePtr parenthesized() {
    Span start = peek().span;
    open(start);
    take();
    NodePtr inner = formula(Flags{true, true});
    if (is_symbol("?")) {
      take();
      NodePtr then_branch = formula(Flags{false, false});
      expect_symbol(":");
      NodePtr else_branch = formula(Flags{false, true});
      close(")");
      return make_node(NodeKind::kConditional,
                       {inner, then_branch, else_branch}, from(start));
    }
    close(")");
    return inner;
  }

  NodePtr lambda(Flags flags) {
    Span start = peek().span;
    auto [var, type] = binder();
    expect_symbol("->");
    NodePtr body = open_body(flags);
    return make_binder(NodeKind::kLambda, std::move(var), std::move(type),
                       body, from(start));
  }

  NodePtr set_literal() {
    Span start = peek().span;
    open(start);
    take();
    if (is_symbol("}")) {
      close("}");
      return make_node(NodeKind::kEmptySet, {}, from(start));
    }
    NodePtr element = formula(Flags{false, true});
    close("}");
    return make_node(NodeKind::kSingleton, {element}, from(start));
  }

  NodePtr let(Flags flags) {
    Span start = peek().span;
    expect_word("Let");
    open(peek().span);
    expect_symbol("{");
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::kLet;
    do {
      if (is_symbol(",")) take();
      node->names.push_back(identifier("binding name"));
      expect_symbol(":=");
      node->children.push_back(formula(Flags{false, true}));
    } while (is_symbol(","));
    close("}");
    expect_symbol(",");
    node->children.push_back(open_body(flags));
    node->span = from(start);
    return node;
  }

  // --- declarations ---
  void expect_declaration_end() {
    if (at_end() || is_symbol("}")) return;
    if (peek().kind == TokenKind::kIdent && is_decl_keyword(peek().text) &&
        peek().line_start) {
      return;
    }
    unexpected("end of declaration");
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    if (!is_symbol("[")) return out;
    open(peek().span);
    take();
    do {
      if (is_symbol(",")) take();
      Param p;
      p.span = peek().span;
      p.name = identifier("parameter name");
      expect_symbol(":");
      p.type = type();
      p.span = from(p.span);
      out.push_back(std::move(p));
    } while (is_symbol(","));
    close("]");
    return out;
  }

  Declaration declaration() {
    const Token& t = peek();
    if (t.kind != TokenKind::kIdent || !is_decl_keyword(t.text)) {
      unexpected("declaration keyword");
    }
    Declaration d;
    Span start = t.span;
    std::string kw = take().text;
    auto named = [&]() {
      d.name_span = peek().span;
      d.name = identifier("declaration name");
    };
    if (kw == "theory") {
      d.kind = DeclKind::kTheoryImport;
      d.packs.push_back(identifier("theory pack name"));
      while (is_symbol(",")) {
        take();
        d.packs.push_back(identifier("theory pack name"));
      }
    } else if (kw == "const") {
      d.kind = DeclKind::kConstant;
      named();
      expect_symbol(":");
      d.type = type();
    } else if (kw == "type") {
      d.kind = DeclKind::kTypeAlias;
      named();
      expect_symbol(":=");
      d.type = type();
    } else if (kw == "axiom") {
      d.kind = DeclKind::kAxiom;
      named();
      expect_symbol(":");
      d.body = formula(Flags{true, true});
    } else if (kw == "def" || kw == "proc") {
      d.kind = kw == "def" ? DeclKind::kDefinition : DeclKind::kProcedure;
      named();
      d.params = params();
      expect_symbol(":=");
      d.body = formula(Flags{true, true});
    } else if (kw == "eval") {
      d.kind = DeclKind::kEval;
      d.body = formula(Flags{true, true});
    } else if (kw == "proof") {
      d.kind = DeclKind::kProof;
      named();
      expect_symbol(":");
      d.body = formula(Flags{true, true});
      d.steps = steps();
    } else {
      d.kind = DeclKind::kExpectFailure;
      d.expected_code = identifier("diagnostic code");
      open(peek().span);
      expect_symbol("{");
      while (!is_symbol("}")) {
        if (at_end()) unexpected("'}'");
        d.inner.push_back(declaration());
      }
      close("}");
    }
    d.span = from(start);
    expect_declaration_end();
    return d;
  }

  std::vector<ProofStep> steps() {
    std::vector<ProofStep> out;
    std::vector<int> open_columns;
    while (peek().kind == TokenKind::kNumber && peek().line_start) {
      ProofStep step;
      Span start = peek().span;
      step.number = std::stoi(take().text);
      expect_symbol(".");
      const Token& kw = peek();
      step.column = kw.span.column;
      while (!open_columns.empty() && step.column <= open_columns.back()) {
        open_columns.pop_back();
      }
      step.depth = static_cast<int>(open_columns.size());
      if (is_word("assume")) {
        take();
        step.keyword = StepKeyword::kAssume;
        step.formula = formula(Flags{true, true});
        open_columns.push_back(step.column);
      } else if (is_word("fix")) {
        take();
        step.keyword = StepKeyword::kFix;
        step.fix_name = identifier("variable name");
        expect_symbol(":");
        step.fix_type = type();
        open_columns.push_back(step.column);
      } else if (is_word("have") || is_word("obtain") ||
                 is_word("conclude")) {
        std::string w = take().text;
        step.keyword = w == "have"     ? StepKeyword::kHave
                       : w == "obtain" ? StepKeyword::kObtain
                                       : StepKeyword::kConclude;
        step.formula = formula(Flags{true, true});
        expect_word("by");
        step.rule_span = peek().span;
        // Rule names may coincide with keywords (`axiom`).
        if (peek().kind != TokenKind::kIdent) unexpected("rule name");
        step.rule = take().text;
        if (is_symbol("(")) {
          open(peek().span);
          take();
          if (!is_symbol(")")) {
            do {
              if (is_symbol(",")) take();
              if (peek().kind != TokenKind::kNumber) unexpected("step number");
              step.refs.push_back(std::stoi(take().text));
            } while (is_symbol(","));
          }
          close(")");
        }
        step.rule_span = from(step.rule_span);
        if (is_word("with")) {
          take();
          step.payload = formula(Flags{false, true});
        }
      } else {
        unexpected("step keyword (assume, fix, have, obtain, conclude)");
      }
      step.span = from(start);
      out.push_back(std::move(step));
    }
    return out;
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Span last_;
  std::vector<Span> open_;
};

}  // namespace

SourceFile parse_file(std::string_view text, std::string path) {
  return Parser(text).file(std::move(path));
}

NodePtr parse_formula(std::string_view text) {
  return Parser(text).lone_formula();
}

TypeSyntax parse_type(std::string_view text) {
  return Parser(text).lone_type();
}

}  // namespace dlk
