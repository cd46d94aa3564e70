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

#include "dlk/env.h"

#include <fmt/format.h>

#include <algorithm>

namespace dlk {

bool alpha_equal(const Proposition& a, const Proposition& b) {
  return a.theory == b.theory && alpha_equal(*a.formula, *b.formula);
}

std::string render(const Proposition& p) { return render(*p.formula); }

bool TheoryEnv::has_pack(std::string_view id) const {
  return std::find(packs_.begin(), packs_.end(), id) != packs_.end();
}

void TheoryEnv::mark_pack(std::string id) {
  if (!has_pack(id)) packs_.push_back(std::move(id));
}

namespace {

template <typename Map>
auto find_in(const Map& map, std::string_view name)
    -> const typename Map::mapped_type* {
  auto it = map.find(name);
  return it == map.end() ? nullptr : &it->second;
}

template <typename Info>
const Info* find_named(const std::vector<Info>& items, std::string_view name) {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

}  // namespace

const ConstantInfo* TheoryEnv::constant(std::string_view name) const {
  return find_in(constants_, name);
}
const DefinitionInfo* TheoryEnv::definition(std::string_view name) const {
  return find_in(definitions_, name);
}
const ProcedureInfo* TheoryEnv::procedure(std::string_view name) const {
  return find_in(procedures_, name);
}
const AxiomInfo* TheoryEnv::axiom(std::string_view name) const {
  return find_named(axioms_, name);
}
const TheoremInfo* TheoryEnv::theorem(std::string_view name) const {
  return find_named(theorems_, name);
}

std::optional<int> TheoryEnv::type_constructor(std::string_view name) const {
  auto it = type_constructors_.find(name);
  if (it == type_constructors_.end()) return std::nullopt;
  return it->second;
}

TypePtr TheoryEnv::type_alias(std::string_view name) const {
  auto it = type_aliases_.find(name);
  return it == type_aliases_.end() ? nullptr : it->second;
}

bool TheoryEnv::name_taken(std::string_view name) const {
  return constant(name) || definition(name) || procedure(name) ||
         axiom(name) || theorem(name);
}

void TheoryEnv::claim(const std::string& name, const Span& span,
                      std::string_view what) const {
  std::string_view existing;
  if (constant(name)) existing = "constant";
  else if (definition(name)) existing = "definition";
  else if (procedure(name)) existing = "procedure";
  else if (axiom(name)) existing = "axiom";
  else if (theorem(name)) existing = "theorem";
  else return;
  fail(codes::kDuplicateName, span,
       fmt::format("cannot declare {} '{}': name already used by a {}", what,
                   name, existing));
}

void TheoryEnv::add_constant(ConstantInfo info, const Span& span) {
  claim(info.name, span, "constant");
  std::string key = info.name;
  constants_.emplace(std::move(key), std::move(info));
}

void TheoryEnv::add_definition(DefinitionInfo info, const Span& span) {
  claim(info.name, span, "definition");
  std::string key = info.name;
  definitions_.emplace(std::move(key), std::move(info));
}

void TheoryEnv::add_procedure(ProcedureInfo info, const Span& span) {
  claim(info.name, span, "procedure");
  std::string key = info.name;
  procedures_.emplace(std::move(key), std::move(info));
}

void TheoryEnv::add_axiom(AxiomInfo info, const Span& span) {
  claim(info.name, span, "axiom");
  axioms_.push_back(std::move(info));
}

void TheoryEnv::add_theorem(TheoremInfo info, const Span& span) {
  claim(info.name, span, "theorem");
  theorems_.push_back(std::move(info));
}

void TheoryEnv::add_type_constructor(const std::string& name, int arity) {
  auto it = type_constructors_.find(name);
  if (it != type_constructors_.end()) {
    if (it->second != arity) {
      fail(codes::kDuplicateName, {},
           fmt::format("type constructor '{}' redeclared with arity {}", name,
                       arity));
    }
    return;
  }
  type_constructors_.emplace(name, arity);
}

void TheoryEnv::add_type_alias(const std::string& name, TypePtr target,
                               const Span& span) {
  if (type_constructors_.count(name) || type_aliases_.count(name)) {
    fail(codes::kDuplicateName, span,
         fmt::format("type name '{}' is already declared", name));
  }
  type_aliases_.emplace(name, std::move(target));
}

}  // namespace dlk
