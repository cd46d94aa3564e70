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

#include "dlk/theories.h"

#include <fmt/format.h>

#include <set>
#include <utility>

#include "dlk/abstraction.h"
#include "dlk/typecheck.h"

namespace dlk {

namespace {

constexpr std::string_view kMathematics = R"(
def Consistent := not exists [P: Proposition] -> (|- (P /\ not P))
)";

constexpr std::string_view kNat = R"(
const Successor : Fun(Nat, Nat)

def Inductive[P: Fun(Nat, Bool)] := P[0] /\ forall [i: Nat] -> P[i] => P[Successor[i]]

axiom zero_nat : 0 : Nat

axiom successor_nat : Successor : Fun(Nat, Nat)

axiom successor_nonzero : forall [i: Nat] -> Successor[i] != 0

axiom successor_injective : forall [i: Nat] -> forall [j: Nat] -> Successor[i] = Successor[j] <=> i = j

axiom induction : forall [P: Fun(Nat, Bool)] -> Inductive[P] <=> forall [i: Nat] -> P[i]
)";

constexpr std::string_view kSets = R"(
const BigUnion : Fun(Sets(Nat), Sets(Nat))

const Elementwise : Fun(Fun(Nat, Nat), Fun(Set(Nat), Set(Nat)))

const Restrict : Fun(Pair(Set(Nat), Fun(Nat, Bool)), Set(Nat))

const Cup : Fun(Pair(Set(Nat), Set(Nat)), Set(Nat))

const Cap : Fun(Pair(Set(Nat), Set(Nat)), Set(Nat))

def CharacteristicFunction[f: Fun(Nat, Bool), s: Set(Nat)] := forall [e: Nat] -> e in s <=> f[e] = True

axiom empty_set : {} : Set(Nat)

axiom singleton_set : forall [x: Nat] -> {x} : Set(Nat)

axiom big_union_set : forall [s: Sets(Nat)] -> BigUnion[s] : Sets(Nat)

axiom empty_set_no_members : forall [x: Nat] -> not x in {}

axiom image_set : forall [s: Set(Nat)] -> forall [f: Fun(Nat, Nat)] -> Elementwise[f][s] : Set(Nat)

axiom restriction_set : forall [s: Set(Nat)] -> forall [p: Fun(Nat, Bool)] -> Restrict[s, p] : Set(Nat)

axiom empty_subset : forall [s: Set(Nat)] -> {} subset s

axiom extensionality : forall [s1: Set(Nat)] -> forall [s2: Set(Nat)] -> s1 = s2 <=> (forall [x: Nat] -> x in s1 <=> x in s2)

axiom singleton_membership : forall [x: Nat] -> forall [y: Nat] -> x in {y} <=> x = y

axiom subset_def : forall [s1: Set(Nat)] -> forall [s2: Set(Nat)] -> s1 subset s2 <=> forall [x: Nat] -> x in s1 => x in s2

axiom cup_membership : forall [x: Nat] -> forall [s1: Set(Nat)] -> forall [s2: Set(Nat)] -> x in Cup[s1, s2] <=> (x in s1 \/ x in s2)

axiom cap_membership : forall [x: Nat] -> forall [s1: Set(Nat)] -> forall [s2: Set(Nat)] -> x in Cap[s1, s2] <=> (x in s1 /\ x in s2)

axiom big_union_membership : forall [x: Union(Nat, Sets(Nat))] -> forall [s: Sets(Nat)] -> x in BigUnion[s] <=> exists [s1: Set(Nat)] -> x in s1 /\ s1 in s

axiom image_membership : forall [y: Nat] -> forall [s: Set(Nat)] -> forall [f: Fun(Nat, Nat)] -> y in Elementwise[f][s] <=> exists [x: Nat] -> x in s /\ f[x] = y

axiom restriction_membership : forall [y: Nat] -> forall [s: Set(Nat)] -> forall [p: Fun(Nat, Bool)] -> y in Restrict[s, p] <=> y in s /\ p[y]

axiom characteristic_function : forall [s: Set(Nat)] -> exists [f: Fun(Nat, Bool)] -> CharacteristicFunction[f, s]

axiom characteristic_function_sets : forall [s: Sets(Nat)] -> exists [f: Fun(Union(Nat, Sets(Nat)), Bool)] -> forall [e: Union(Nat, Sets(Nat))] -> e in s <=> f[e] = True
)";

constexpr std::string_view kReals = R"(
const ZeroR : R

const OneR : R

const le : Fun(Pair(R, R), Bool)

const lt : Fun(Pair(R, R), Bool)

const add : Fun(Pair(R, R), R)

def UpperBound[b: R, S: Set(R)] := b in S /\ forall [x: R] -> x in S => x <= b

def Bounded[S: Set(R)] := exists [b: R] -> UpperBound[b, S]

def LeastUpperBound[b: R, S: Set(R)] := UpperBound[b, S] /\ forall [x: R] -> x in S => (UpperBound[x, S] <=> x <= b)

def HasLeastUpperBound[S: Set(R)] := exists [b: R] -> LeastUpperBound[b, S]

axiom least_upper_bound : forall [S: Set(R)] -> S != {} /\ Bounded[S] <=> HasLeastUpperBound[S]
)";

// Highest SetFunctionsOfOrder alias provided by the sets pack.
constexpr int kSetFunctionOrders = 3;

const Node* find_identifier(const Node& n, std::string_view name) {
  if (n.kind == NodeKind::kIdentifier && n.text == name) return &n;
  for (const auto& c : n.children) {
    if (const Node* hit = find_identifier(*c, name)) return hit;
  }
  return nullptr;
}

void check_fresh(const TheoryEnv& env, const std::string& name,
                 const Span& span, std::string_view what) {
  if (env.name_taken(name) || builtin_type(name)) {
    fail(codes::kDuplicateName, span,
         fmt::format("cannot declare {} '{}': the name is already in use",
                     what, name));
  }
}

std::vector<TypePtr> bind_params(TypingContext& ctx,
                                 const std::vector<Param>& params) {
  std::vector<TypePtr> types;
  for (const auto& p : params) {
    types.push_back(resolve_type(ctx, p.type));
    ctx.push(p.name, types.back());
  }
  return types;
}

TheoryEnv define(TheoryEnv env, const std::string& name,
                 const std::vector<Param>& params, const NodePtr& body,
                 const Span& span, const std::string& origin) {
  check_fresh(env, name, span, "definition");
  if (const Node* self = find_identifier(*body, name)) {
    fail(codes::kSelfReference, self->span.valid() ? self->span : span,
         fmt::format("definition '{}' refers to itself", name),
         {"definitions are not recursive; only procedures and Let "
          "expressions may recurse"});
  }
  TypingContext ctx(env);
  std::vector<TypePtr> types = bind_params(ctx, params);
  DefinitionInfo info;
  info.name = name;
  info.body = body;
  info.origin = origin;
  TypePtr result;
  if (is_sentence_shaped(*body)) {
    check_sentence(ctx, *body);
    info.sentence = true;
    result = params.empty() ? base_type(BaseType::kProposition)
                            : base_type(BaseType::kBoolean);
  } else {
    result = infer_term(ctx, *body);
  }
  require_holes_solved(ctx);
  for (auto& t : types) t = ctx.zonk(t);
  for (const auto& p : params) info.params.push_back(p.name);
  info.param_types = types;
  info.type = params.empty() ? ctx.zonk(result)
                             : fun_type(tuple_type(types), ctx.zonk(result));
  if (info.sentence) {
    std::set<std::string> rigid(info.params.begin(), info.params.end());
    abstract_sentence(env, body, rigid);
  }
  env.add_definition(std::move(info), span);
  return env;
}

TheoryEnv procedure(TheoryEnv env, const std::string& name,
                    const std::vector<Param>& params, const NodePtr& body,
                    const Span& span) {
  check_fresh(env, name, span, "procedure");
  TypingContext ctx(env);
  TypePtr result = ctx.supply.fresh();
  std::vector<TypePtr> domain;
  for (const auto& p : params) domain.push_back(resolve_type(ctx, p.type));
  TypePtr self = params.empty() ? result
                                : proc_type(tuple_type(domain), result);
  ctx.push(name, self);
  for (std::size_t i = 0; i < params.size(); ++i) {
    ctx.push(params[i].name, domain[i]);
  }
  TypePtr t = infer_expression(ctx, *body);
  ctx.subst = unify(result, t, ctx.subst, body->span);
  ProcedureInfo info;
  info.name = name;
  for (const auto& p : params) info.params.push_back(p.name);
  info.body = body;
  info.type = ctx.zonk(self);
  env.add_procedure(std::move(info), span);
  return env;
}

TheoryEnv axiom(TheoryEnv env, const std::string& name,
                const NodePtr& statement, const Span& span,
                const std::string& origin) {
  check_fresh(env, name, span, "axiom");
  TypingContext ctx(env);
  check_sentence(ctx, *statement);
  require_holes_solved(ctx);
  Proposition p = abstract_sentence(env, statement, {}, env.name);
  env.add_axiom(AxiomInfo{name, std::move(p), origin}, span);
  return env;
}

TheoryEnv constant(TheoryEnv env, const std::string& name,
                   const TypeSyntax& type, const Span& span,
                   const std::string& origin) {
  check_fresh(env, name, span, "constant");
  TypingContext ctx(env);
  TypePtr t = resolve_type(ctx, type);
  require_holes_solved(ctx);
  env.add_constant(ConstantInfo{name, ctx.zonk(t), origin}, span);
  return env;
}

TypePtr set_function_order(int n) {
  TypePtr nat = base_type(BaseType::kNat);
  TypePtr t = fun_type(nat, nat);
  for (int i = 1; i < n; ++i) {
    TypePtr domain = union_type(nat, t);
    t = fun_type(domain, domain);
  }
  return t;
}

TheoryEnv load_source(TheoryEnv env, std::string_view text,
                      const std::string& origin) {
  SourceFile file = parse_file(text, fmt::format("<pack {}>", origin));
  for (const auto& d : file.declarations) env = declare(std::move(env), d, origin);
  return env;
}

}  // namespace

const std::vector<std::string>& known_packs() {
  static const std::vector<std::string> packs = {"nat", "sets", "reals"};
  return packs;
}

std::string_view pack_source(std::string_view id) {
  if (id == "nat") return kNat;
  if (id == "sets") return kSets;
  if (id == "reals") return kReals;
  return {};
}

TheoryEnv load_pack(TheoryEnv env, std::string_view id) {
  if (env.has_pack(id)) return env;
  std::string origin(id);
  if (id == "nat") {
    env.add_constant(ConstantInfo{"0", base_type(BaseType::kNat), origin});
  } else if (id == "sets") {
    env.add_type_constructor("Set", 1);
    env.add_type_constructor("Sets", 1);
    for (int n = 1; n <= kSetFunctionOrders; ++n) {
      env.add_type_alias(fmt::format("SetFunctionsOfOrder{}", n),
                         set_function_order(n));
    }
  } else if (id == "reals") {
    env.add_type_constructor("R", 0);
    env.add_type_constructor("Set", 1);
  } else {
    fail(codes::kUnknownIdentifier, {},
         fmt::format("unknown theory pack '{}'", id),
         {"available packs: nat, sets, reals"});
  }
  env = load_source(std::move(env), pack_source(id), origin);
  env.mark_pack(origin);
  return env;
}

TheoryEnv load_theory(const std::vector<std::string>& packs) {
  TheoryEnv env;
  env = load_source(std::move(env), kMathematics, "mathematics");
  for (const auto& id : packs) env = load_pack(std::move(env), id);
  return env;
}

TheoryEnv add_definition(TheoryEnv env, const std::string& name,
                         const std::vector<Param>& params, const NodePtr& body,
                         const Span& span) {
  return define(std::move(env), name, params, body, span, {});
}

TheoryEnv add_procedure(TheoryEnv env, const std::string& name,
                        const std::vector<Param>& params, const NodePtr& body,
                        const Span& span) {
  return procedure(std::move(env), name, params, body, span);
}

TheoryEnv add_axiom(TheoryEnv env, const std::string& name,
                    const NodePtr& statement, const Span& span) {
  return axiom(std::move(env), name, statement, span, {});
}

TheoryEnv add_constant(TheoryEnv env, const std::string& name,
                       const TypeSyntax& type, const Span& span) {
  return constant(std::move(env), name, type, span, {});
}

TheoryEnv add_type_alias(TheoryEnv env, const std::string& name,
                         const TypeSyntax& type, const Span& span) {
  if (env.name_taken(name) || env.type_constructor(name) ||
      env.type_alias(name)) {
    fail(codes::kDuplicateName, span,
         fmt::format("cannot declare type '{}': the name is already in use",
                     name));
  }
  TypingContext ctx(env);
  TypePtr t = resolve_type(ctx, type);
  require_holes_solved(ctx);
  env.add_type_alias(name, ctx.zonk(t), span);
  return env;
}

TheoryEnv declare(TheoryEnv env, const Declaration& d,
                  const std::string& origin) {
  switch (d.kind) {
    case DeclKind::kConstant:
      return constant(std::move(env), d.name, *d.type, d.name_span, origin);
    case DeclKind::kTypeAlias:
      return add_type_alias(std::move(env), d.name, *d.type, d.name_span);
    case DeclKind::kAxiom:
      return axiom(std::move(env), d.name, d.body, d.name_span, origin);
    case DeclKind::kDefinition:
      return define(std::move(env), d.name, d.params, d.body, d.name_span,
                    origin);
    case DeclKind::kProcedure:
      return procedure(std::move(env), d.name, d.params, d.body, d.name_span);
    default:
      fail(codes::kSyntax, d.span,
           "only constants, types, axioms, definitions and procedures "
           "extend a theory");
  }
}

}  // namespace dlk
