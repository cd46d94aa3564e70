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

#ifndef DLK_TYPES_H_
#define DLK_TYPES_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dlk/diagnostic.h"

namespace dlk {

enum class BaseType {
  kBoolean,
  kNat,
  kString,
  kSentence,
  kProposition,
  kProof,
  kTheory,
};

inline constexpr BaseType kAllBaseTypes[] = {
    BaseType::kBoolean,     BaseType::kNat,   BaseType::kString,
    BaseType::kSentence,    BaseType::kProposition, BaseType::kProof,
    BaseType::kTheory};

std::string_view base_name(BaseType base);

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { kBase, kUnion, kPair, kProc, kFun, kTermOf, kMeta, kNamed };

  Kind kind = Kind::kBase;
  BaseType base = BaseType::kBoolean;
  int meta = -1;
  // Name of a theory-supplied constructor (e.g. Set, R) for kNamed.
  std::string name;
  // Union/Pair/Proc/Fun: two; TermOf: one; Named: constructor arguments.
  std::vector<TypePtr> args;
};

TypePtr base_type(BaseType base);
TypePtr union_type(TypePtr left, TypePtr right);
TypePtr pair_type(TypePtr first, TypePtr second);
TypePtr proc_type(TypePtr domain, TypePtr codomain);
TypePtr fun_type(TypePtr domain, TypePtr codomain);
TypePtr term_of(TypePtr inner);
TypePtr meta_type(int id);
TypePtr named_type(std::string name, std::vector<TypePtr> args = {});

bool is_base(const TypePtr& t, BaseType base);
bool type_equal(const Type& a, const Type& b);
bool contains_meta(const Type& t);
std::set<int> metas_of(const Type& t);

// Surface spelling, e.g. `Fun(Nat, Bool)`; metas print as `?N`.
std::string render(const Type& t);

// Substitution from meta ids to types, kept in solved form so that applying
// it once resolves every bound meta (idempotence).
class Substitution {
 public:
  TypePtr apply(const TypePtr& t) const;
  bool bound(int meta) const { return map_.count(meta) > 0; }
  const std::map<int, TypePtr>& bindings() const { return map_; }

  // Adds meta := t; t must already be resolved and must not contain meta.
  void bind(int meta, const TypePtr& t);

 private:
  std::map<int, TypePtr> map_;
};

// Most general unifier extending `s`. Throws E020 on constructor mismatch
// (with a note naming the mismatching position) and E021 on occurs-check
// failure.
Substitution unify(const TypePtr& a, const TypePtr& b, Substitution s,
                   const Span& span = {});

// Accepts a fully solved type; E022 if any meta remains.
void wf_type(const TypePtr& t, const Span& span = {});

// Source of fresh meta ids.
class MetaSupply {
 public:
  TypePtr fresh() { return meta_type(next_++); }
  int peek() const { return next_; }

 private:
  int next_ = 0;
};

// Replaces every meta in `scheme` with a fresh one (consistently).
TypePtr instantiate(const TypePtr& scheme, MetaSupply& supply);

}  // namespace dlk

#endif  // DLK_TYPES_H_
