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

#include "dlk/typecheck.h"

#include <fmt/format.h>

#include <optional>

namespace dlk {

void TypingContext::push(std::string name, TypePtr type, bool rigid) {
  bindings_.push_back(Binding{std::move(name), std::move(type), rigid});
}

void TypingContext::pop(std::size_t count) {
  bindings_.resize(bindings_.size() - count);
}

const Binding* TypingContext::lookup(std::string_view name) const {
  for (std::size_t i = bindings_.size(); i-- > 0;) {
    if (bindings_[i].name == name) return &bindings_[i];
  }
  return nullptr;
}

TypePtr builtin_type(std::string_view name) {
  if (name == "Length") {
    return fun_type(base_type(BaseType::kString), base_type(BaseType::kNat));
  }
  return nullptr;
}

bool is_global_name(const TheoryEnv& env, std::string_view name) {
  return env.constant(name) || env.definition(name) || env.procedure(name) ||
         builtin_type(name) != nullptr;
}

TypePtr tuple_type(const std::vector<TypePtr>& parts) {
  TypePtr out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    out = pair_type(parts[i], out);
  }
  return out;
}

namespace {

std::optional<BaseType> base_from_name(std::string_view name) {
  for (BaseType b : kAllBaseTypes) {
    if (base_name(b) == name) return b;
  }
  return std::nullopt;
}

bool is_kind(const TypePtr& t, Type::Kind kind) { return t->kind == kind; }

bool is_named(const TypePtr& t, std::string_view name) {
  return t->kind == Type::Kind::kNamed && t->name == name &&
         t->args.size() == 1;
}

std::string_view order_constant(std::string_view op) {
  if (op == "<") return "lt";
  if (op == ">") return "gt";
  if (op == "<=") return "le";
  return "ge";
}

enum class Mode { kTerm, kExpression };

class Checker {
 public:
  Checker(TypingContext& ctx, Mode mode) : ctx_(ctx), mode_(mode) {}

  TypePtr infer(const Node& n) { return ctx_.zonk(infer_raw(n)); }

  void sentence(const Node& n) {
    switch (n.kind) {
      case NodeKind::kNot:
      case NodeKind::kAnd:
      case NodeKind::kOr:
      case NodeKind::kImplies:
      case NodeKind::kIff:
      case NodeKind::kTurnstile:
        for (const auto& c : n.children) sentence(*c);
        return;
      case NodeKind::kProofTurnstile:
        accept(base_type(BaseType::kProof), infer(*n.children[0]),
               n.children[0]->span);
        sentence(*n.children[1]);
        return;
      case NodeKind::kForall:
      case NodeKind::kExists: {
        ctx_.push(n.text, resolve_type(ctx_, *n.type));
        sentence(*n.children[0]);
        ctx_.pop();
        return;
      }
      case NodeKind::kRelation:
        relation(n);
        return;
      case NodeKind::kJudgment: {
        TypePtr t = infer(*n.children[0]);
        TypePtr annotated = resolve_type(ctx_, *n.type);
        try_unify(t, annotated, n.span);
        return;
      }
      case NodeKind::kApply:
      case NodeKind::kCall:
        predicate(n);
        return;
      default:
        truth(infer(n), n.span);
    }
  }

 private:
  TypePtr infer_raw(const Node& n) {
    switch (n.kind) {
      case NodeKind::kIdentifier:
        return identifier(n);
      case NodeKind::kNumeral:
        return base_type(BaseType::kNat);
      case NodeKind::kString:
        return base_type(BaseType::kString);
      case NodeKind::kBoolean:
        return base_type(BaseType::kBoolean);
      case NodeKind::kOpaque:
        return resolve_type(ctx_, *n.type);
      case NodeKind::kEmptySet:
        return set_of(ctx_.supply.fresh(), n.span);
      case NodeKind::kSingleton:
        return set_of(infer(*n.children[0]), n.span);
      case NodeKind::kApply:
      case NodeKind::kCall:
        return application(n);
      case NodeKind::kLambda: {
        TypePtr domain = resolve_type(ctx_, *n.type);
        ctx_.push(n.text, domain);
        TypePtr body = infer(*n.children[0]);
        ctx_.pop();
        return mode_ == Mode::kTerm ? fun_type(domain, body)
                                    : proc_type(domain, body);
      }
      case NodeKind::kConditional: {
        accept(base_type(BaseType::kBoolean), infer(*n.children[0]),
               n.children[0]->span);
        TypePtr then_type = infer(*n.children[1]);
        TypePtr else_type = infer(*n.children[2]);
        ctx_.subst = unify(then_type, else_type, ctx_.subst, n.span);
        return then_type;
      }
      case NodeKind::kQuote:
        return quote(n);
      case NodeKind::kAbstract:
        return abstraction(n);
      case NodeKind::kLet:
        return let(n);
      default:
        sentence(n);
        return base_type(BaseType::kBoolean);
    }
  }

  TypePtr identifier(const Node& n) {
    const TheoryEnv& env = ctx_.env();
    if (const Binding* b = ctx_.lookup(n.text)) return b->type;
    if (const ConstantInfo* c = env.constant(n.text)) {
      return instantiate(c->type, ctx_.supply);
    }
    if (const DefinitionInfo* d = env.definition(n.text)) return d->type;
    if (const ProcedureInfo* p = env.procedure(n.text)) {
      return instantiate(p->type, ctx_.supply);
    }
    if (TypePtr t = builtin_type(n.text)) return t;
    std::vector<std::string> notes;
    if (env.axiom(n.text) || env.theorem(n.text)) {
      notes.push_back("axioms and theorems are cited by rules, not used as terms");
    }
    fail(codes::kUnknownIdentifier, n.span,
         fmt::format("unknown identifier '{}'", n.text), std::move(notes));
  }

  TypePtr set_of(TypePtr element, const Span& span) {
    if (!ctx_.env().type_constructor("Set")) {
      fail(codes::kUnknownIdentifier, span,
           "set literals need the Set type constructor",
           {"load the `sets` theory pack"});
    }
    return named_type("Set", {std::move(element)});
  }

  TypePtr arguments(const Node& n) {
    std::vector<TypePtr> parts;
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      parts.push_back(infer(*n.children[i]));
    }
    return tuple_type(parts);
  }

  TypePtr application(const Node& n) {
    bool call = n.kind == NodeKind::kCall;
    TypePtr head = infer(*n.children[0]);
    TypePtr arg = arguments(n);
    Type::Kind want = call ? Type::Kind::kProc : Type::Kind::kFun;
    if (is_kind(head, Type::Kind::kMeta)) {
      TypePtr result = ctx_.supply.fresh();
      TypePtr shape = call ? proc_type(arg, result) : fun_type(arg, result);
      ctx_.subst = unify(head, shape, ctx_.subst, n.span);
      return result;
    }
    if (head->kind == want) {
      accept(head->args[0], arg, n.span);
      return head->args[1];
    }
    if (is_kind(head, Type::Kind::kFun) || is_kind(head, Type::Kind::kProc)) {
      fail(codes::kTypeMismatch, n.span,
           fmt::format("'{}' has type {}; {}", render(*n.children[0]),
                       render(*head),
                       call ? "apply functions with `f[...]`"
                            : "call procedures with `p.[...]`"));
    }
    fail(codes::kTypeMismatch, n.children[0]->span,
         fmt::format("cannot apply '{}' of type {}", render(*n.children[0]),
                     render(*head)));
  }

  TypePtr quote(const Node& n) {
    const Node& inner = *n.children[0];
    if (is_sentence_shaped(inner)) {
      bool saved = ctx_.quoted;
      ctx_.quoted = true;
      sentence(inner);
      ctx_.quoted = saved;
      return base_type(BaseType::kSentence);
    }
    return term_of(infer(inner));
  }

  void require_closed_quote(const Node& arg, const Span& span) {
    if (arg.kind != NodeKind::kQuote) return;
    for (const auto& name : free_identifiers(*arg.children[0])) {
      const Binding* b = ctx_.lookup(name);
      if (b && !b->rigid) {
        fail(codes::kOpenTerm, span,
             fmt::format("abstraction of an open term: '{}' is free", name),
             {"only closed sentences and terms can be abstracted"});
      }
    }
  }

  TypePtr abstraction(const Node& n) {
    const Node& arg = *n.children[0];
    TypePtr t = infer(arg);
    if (is_kind(t, Type::Kind::kTermOf)) {
      require_closed_quote(arg, n.span);
      return t->args[0];
    }
    if (is_base(t, BaseType::kSentence)) {
      require_closed_quote(arg, n.span);
      return base_type(BaseType::kProposition);
    }
    // A string only denotes a sentence or term after parsing, so nothing
    // about the result type is known statically.
    if (is_base(t, BaseType::kString) || is_kind(t, Type::Kind::kMeta)) {
      return ctx_.supply.fresh();
    }
    fail(codes::kTypeMismatch, n.span,
         fmt::format("abstract expects Term(σ), Sentence or String, found {}",
                     render(*t)));
  }

  TypePtr let(const Node& n) {
    if (mode_ == Mode::kTerm) {
      fail(codes::kTypeMismatch, n.span,
           "Let is an expression form and cannot appear in a term",
           {"use a procedure declaration (`proc`) for programs"});
    }
    std::vector<TypePtr> slots;
    for (const auto& name : n.names) {
      slots.push_back(ctx_.supply.fresh());
      ctx_.push(name, slots.back());
    }
    for (std::size_t i = 0; i < n.names.size(); ++i) {
      TypePtr value = infer(*n.children[i]);
      ctx_.subst = unify(slots[i], value, ctx_.subst, n.children[i]->span);
    }
    TypePtr body = infer(*n.children.back());
    ctx_.pop(n.names.size());
    return body;
  }

  // Unifies expected with actual, injecting into a Union where needed.
  void accept(const TypePtr& expected, const TypePtr& actual,
              const Span& span) {
    try {
      ctx_.subst = unify(expected, actual, ctx_.subst, span);
    } catch (const KernelError& e) {
      if (e.code() != codes::kTypeMismatch) throw;
      TypePtr want = ctx_.zonk(expected);
      if (is_kind(want, Type::Kind::kUnion)) {
        for (const auto& side : want->args) {
          if (try_accept(side, actual, span)) return;
        }
      }
      throw;
    }
  }

  bool try_accept(const TypePtr& expected, const TypePtr& actual,
                  const Span& span) {
    Substitution saved = ctx_.subst;
    try {
      accept(expected, actual, span);
      return true;
    } catch (const KernelError&) {
      ctx_.subst = std::move(saved);
      return false;
    }
  }

  bool try_unify(const TypePtr& a, const TypePtr& b, const Span& span) {
    try {
      ctx_.subst = unify(a, b, ctx_.subst, span);
      return true;
    } catch (const KernelError&) {
      return false;
    }
  }

  void truth(const TypePtr& raw, const Span& span) {
    TypePtr t = ctx_.zonk(raw);
    if (is_base(t, BaseType::kBoolean) || is_base(t, BaseType::kProposition))
      return;
    if (ctx_.quoted && is_base(t, BaseType::kSentence)) return;
    if (is_kind(t, Type::Kind::kMeta)) {
      ctx_.subst = unify(t, base_type(BaseType::kBoolean), ctx_.subst, span);
      return;
    }
    std::vector<std::string> notes;
    if (is_base(t, BaseType::kSentence)) {
      notes.push_back("a Sentence is a grammar tree; abstract it first");
    }
    fail(codes::kTypeMismatch, span,
         fmt::format("expected a sentence (Bool or Proposition), found {}",
                     render(*t)),
         std::move(notes));
  }

  void predicate(const Node& n) {
    bool call = n.kind == NodeKind::kCall;
    const Node& head_node = *n.children[0];
    TypePtr head = infer(head_node);
    TypePtr arg = arguments(n);
    if (is_kind(head, Type::Kind::kMeta)) {
      fail(codes::kNoStrictType, head_node.span,
           fmt::format("predicate '{}' has no strict type", render(head_node)),
           {fmt::format("its type is the unsolved {}; a predicate needs "
                        "type Fun(σ, Bool) for a determined σ",
                        render(*head))});
    }
    Type::Kind want = call ? Type::Kind::kProc : Type::Kind::kFun;
    if (head->kind != want) {
      fail(codes::kTypeMismatch, head_node.span,
           fmt::format("'{}' of type {} cannot be used as a predicate",
                       render(head_node), render(*head)));
    }
    accept(head->args[0], arg, n.span);
    truth(head->args[1], n.span);
    TypePtr domain = ctx_.zonk(head->args[0]);
    if (contains_meta(*domain)) {
      fail(codes::kNoStrictType, head_node.span,
           fmt::format("predicate '{}' has no strict type", render(head_node)),
           {fmt::format("its domain {} is not determined", render(*domain))});
    }
  }

  void relation(const Node& n) {
    const std::string& op = n.text;
    TypePtr lhs = infer(*n.children[0]);
    TypePtr rhs = infer(*n.children[1]);
    if (op == "=" || op == "!=") {
      if (try_unify(lhs, rhs, n.span) || try_accept(lhs, rhs, n.span) ||
          try_accept(rhs, lhs, n.span))
        return;
      fail(codes::kTypeMismatch, n.span,
           fmt::format("cannot compare {} with {}", render(*ctx_.zonk(lhs)),
                       render(*ctx_.zonk(rhs))));
    }
    if (op == "in") return membership(n, lhs, rhs);
    if (op == "subset") {
      ctx_.subst = unify(lhs, rhs, ctx_.subst, n.span);
      TypePtr t = ctx_.zonk(lhs);
      if (is_named(t, "Set") || is_named(t, "Sets") ||
          is_kind(t, Type::Kind::kMeta))
        return;
      fail(codes::kTypeMismatch, n.span,
           fmt::format("`subset` relates sets, found {}", render(*t)));
    }
    if (op == "sqsubset" || op == "sqsubseteq") {
      try_unify(lhs, rhs, n.span);
      return;
    }
    comparison(n, lhs, rhs);
  }

  void membership(const Node& n, const TypePtr& element, const TypePtr& raw) {
    TypePtr set = ctx_.zonk(raw);
    if (is_kind(set, Type::Kind::kMeta)) {
      ctx_.subst = unify(set, set_of(element, n.span), ctx_.subst, n.span);
      return;
    }
    std::vector<TypePtr> candidates;
    if (is_named(set, "Set")) {
      candidates = {set->args[0]};
    } else if (is_named(set, "Sets")) {
      const TypePtr& t = set->args[0];
      candidates = {t, named_type("Set", {t}), set,
                    union_type(t, named_type("Sets", {t}))};
    } else {
      fail(codes::kTypeMismatch, n.children[1]->span,
           fmt::format("`in` needs a set on the right, found {}",
                       render(*set)));
    }
    TypePtr x = ctx_.zonk(element);
    for (const auto& c : candidates) {
      if (try_unify(c, x, n.span)) return;
      if (is_kind(x, Type::Kind::kUnion)) {
        for (const auto& side : x->args) {
          if (try_unify(c, side, n.span)) return;
        }
      }
    }
    fail(codes::kTypeMismatch, n.span,
         fmt::format("an element of type {} cannot be a member of {}",
                     render(*x), render(*set)),
         {"membership across set levels is ill-typed"});
  }

  void comparison(const Node& n, const TypePtr& lhs, const TypePtr& rhs) {
    TypePtr nat = base_type(BaseType::kNat);
    Substitution saved = ctx_.subst;
    if (try_unify(lhs, nat, n.span) && try_unify(rhs, nat, n.span)) return;
    ctx_.subst = saved;
    std::string_view name = order_constant(n.text);
    if (const ConstantInfo* c = ctx_.env().constant(name)) {
      TypePtr t = instantiate(c->type, ctx_.supply);
      if (is_kind(t, Type::Kind::kFun) &&
          is_kind(t->args[0], Type::Kind::kPair)) {
        accept(t->args[0]->args[0], lhs, n.span);
        accept(t->args[0]->args[1], rhs, n.span);
        truth(t->args[1], n.span);
        return;
      }
    }
    fail(codes::kTypeMismatch, n.span,
         fmt::format("no order `{}` between {} and {}", n.text,
                     render(*ctx_.zonk(lhs)), render(*ctx_.zonk(rhs))),
         {fmt::format("`{}` is built in for Nat; other types need a "
                      "constant '{}'",
                      n.text, name)});
  }

  TypingContext& ctx_;
  Mode mode_;
};

}  // namespace

TypePtr resolve_type(TypingContext& ctx, const TypeSyntax& syntax) {
  if (syntax.hole) {
    TypePtr meta;
    if (syntax.name.empty()) {
      meta = ctx.supply.fresh();
    } else {
      auto [it, inserted] = ctx.named_holes.emplace(syntax.name, nullptr);
      if (inserted) it->second = ctx.supply.fresh();
      meta = it->second;
    }
    ctx.holes.emplace_back(meta, syntax.span);
    return meta;
  }
  auto arity_error = [&](std::size_t want) {
    fail(codes::kTypeMismatch, syntax.span,
         fmt::format("type '{}' takes {} argument{}, got {}", syntax.name,
                     want, want == 1 ? "" : "s", syntax.args.size()));
  };
  std::vector<TypePtr> args;
  for (const auto& a : syntax.args) args.push_back(resolve_type(ctx, a));
  if (auto base = base_from_name(syntax.name)) {
    if (!args.empty()) arity_error(0);
    return base_type(*base);
  }
  const std::string& n = syntax.name;
  if (n == "Union" || n == "Pair" || n == "Proc" || n == "Fun") {
    if (args.size() != 2) arity_error(2);
    if (n == "Union") return union_type(args[0], args[1]);
    if (n == "Pair") return pair_type(args[0], args[1]);
    if (n == "Proc") return proc_type(args[0], args[1]);
    return fun_type(args[0], args[1]);
  }
  if (n == "Term") {
    if (args.size() != 1) arity_error(1);
    return term_of(args[0]);
  }
  if (auto arity = ctx.env().type_constructor(n)) {
    if (args.size() != static_cast<std::size_t>(*arity)) arity_error(*arity);
    return named_type(n, std::move(args));
  }
  if (TypePtr alias = ctx.env().type_alias(n)) {
    if (!args.empty()) arity_error(0);
    return alias;
  }
  fail(codes::kUnknownIdentifier, syntax.span,
       fmt::format("unknown type '{}'", n));
}

TypePtr infer_term(TypingContext& ctx, const Node& term) {
  return Checker(ctx, Mode::kTerm).infer(term);
}

TypePtr infer_expression(TypingContext& ctx, const Node& expression) {
  return Checker(ctx, Mode::kExpression).infer(expression);
}

void check_sentence(TypingContext& ctx, const Node& sentence) {
  Checker(ctx, Mode::kTerm).sentence(sentence);
}

void require_holes_solved(const TypingContext& ctx) {
  for (const auto& [meta, span] : ctx.holes) {
    TypePtr t = ctx.zonk(meta);
    if (contains_meta(*t)) {
      fail(codes::kUnsolvedHole, span,
           fmt::format("type hole is not determined (solved as far as {})",
                       render(*t)),
           {"holes must be fully solved within their declaration"});
    }
  }
}

}  // namespace dlk
