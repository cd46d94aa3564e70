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

#ifndef DLK_TYPECHECK_H_
#define DLK_TYPECHECK_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlk/env.h"
#include "dlk/syntax.h"
#include "dlk/types.h"

namespace dlk {

struct Binding {
  std::string name;
  TypePtr type;
  // Proof-local constants (`fix` variables, `obtain` witnesses) are rigid:
  // they count as closed for abstraction.
  bool rigid = false;
};

// Typing state for one declaration: scoped variable bindings over a theory,
// plus the meta-variable solver state shared by everything elaborated in
// that declaration.
class TypingContext {
 public:
  explicit TypingContext(const TheoryEnv& env) : env_(&env) {}

  const TheoryEnv& env() const { return *env_; }

  void push(std::string name, TypePtr type, bool rigid = false);
  void pop(std::size_t count = 1);
  // Innermost binding of `name`, or null.
  const Binding* lookup(std::string_view name) const;
  const std::vector<Binding>& bindings() const { return bindings_; }

  TypePtr zonk(const TypePtr& t) const { return subst.apply(t); }

  Substitution subst;
  MetaSupply supply;
  std::map<std::string, TypePtr> named_holes;
  std::vector<std::pair<TypePtr, Span>> holes;
  bool quoted = false;

 private:
  const TheoryEnv* env_;
  std::vector<Binding> bindings_;
};

// Interprets a surface type under the theory's constructors and aliases.
TypePtr resolve_type(TypingContext& ctx, const TypeSyntax& syntax);

// Term mode: lambdas are functions (Fun); Let is not allowed.
TypePtr infer_term(TypingContext& ctx, const Node& term);
// Expression mode: lambdas are procedures (Proc); Let may be recursive.
TypePtr infer_expression(TypingContext& ctx, const Node& expression);
void check_sentence(TypingContext& ctx, const Node& sentence);

// E022 at the first `?` hole whose meta is still unsolved.
void require_holes_solved(const TypingContext& ctx);

// Kernel-provided constants that exist in every theory (currently Length).
TypePtr builtin_type(std::string_view name);

// True for names resolvable without local bindings: theory constants,
// definitions, procedures and builtins.
bool is_global_name(const TheoryEnv& env, std::string_view name);

// Domain type of a parameter list: the single type, or right-nested pairs.
TypePtr tuple_type(const std::vector<TypePtr>& parts);

}  // namespace dlk

#endif  // DLK_TYPECHECK_H_
