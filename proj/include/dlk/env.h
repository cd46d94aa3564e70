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

#ifndef DLK_ENV_H_
#define DLK_ENV_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlk/syntax.h"
#include "dlk/types.h"

namespace dlk {

// An abstract, assertable proposition: a closed, checked sentence tree
// together with the theory it is asserted in.
struct Proposition {
  NodePtr formula;
  std::string theory = "Mathematics";
  std::optional<Span> provenance;  // sentence it was abstracted from, if any
};

bool alpha_equal(const Proposition& a, const Proposition& b);
std::string render(const Proposition& p);

struct ConstantInfo {
  std::string name;
  TypePtr type;  // may contain metas, which are instantiated per use
  std::string origin;  // pack id, or empty for user declarations
};

struct DefinitionInfo {
  std::string name;
  std::vector<std::string> params;
  std::vector<TypePtr> param_types;
  NodePtr body;
  TypePtr type;  // Proposition, Fun(domain, Bool), or Fun(domain, body type)
  bool sentence = false;
  std::string origin;
};

struct ProcedureInfo {
  std::string name;
  std::vector<std::string> params;
  NodePtr body;
  TypePtr type;  // generalized: remaining metas are scheme variables
};

struct AxiomInfo {
  std::string name;
  Proposition statement;
  std::string origin;
};

struct TheoremInfo {
  std::string name;
  Proposition statement;
};

// Named theory contents. Values are cheap to copy at desk scale, and every
// update operation in the public API returns a new environment.
class TheoryEnv {
 public:
  std::string name = "Mathematics";

  const std::vector<std::string>& packs() const { return packs_; }
  bool has_pack(std::string_view id) const;
  void mark_pack(std::string id);

  const ConstantInfo* constant(std::string_view name) const;
  const DefinitionInfo* definition(std::string_view name) const;
  const ProcedureInfo* procedure(std::string_view name) const;
  const AxiomInfo* axiom(std::string_view name) const;
  const TheoremInfo* theorem(std::string_view name) const;
  std::optional<int> type_constructor(std::string_view name) const;
  TypePtr type_alias(std::string_view name) const;

  // True if `name` is already used by a term-level entity or statement.
  bool name_taken(std::string_view name) const;

  // Adders throw E034 on a clash with any existing name.
  void add_constant(ConstantInfo info, const Span& span = {});
  void add_definition(DefinitionInfo info, const Span& span = {});
  void add_procedure(ProcedureInfo info, const Span& span = {});
  void add_axiom(AxiomInfo info, const Span& span = {});
  void add_theorem(TheoremInfo info, const Span& span = {});
  void add_type_constructor(const std::string& name, int arity);
  void add_type_alias(const std::string& name, TypePtr target,
                      const Span& span = {});

  const std::vector<AxiomInfo>& axioms() const { return axioms_; }
  const std::vector<TheoremInfo>& theorems() const { return theorems_; }
  const std::map<std::string, ConstantInfo, std::less<>>& constants() const {
    return constants_;
  }
  const std::map<std::string, DefinitionInfo, std::less<>>& definitions()
      const {
    return definitions_;
  }

 private:
  void claim(const std::string& name, const Span& span,
             std::string_view what) const;

  std::vector<std::string> packs_;
  std::map<std::string, ConstantInfo, std::less<>> constants_;
  std::map<std::string, DefinitionInfo, std::less<>> definitions_;
  std::map<std::string, ProcedureInfo, std::less<>> procedures_;
  std::vector<AxiomInfo> axioms_;
  std::vector<TheoremInfo> theorems_;
  std::map<std::string, int, std::less<>> type_constructors_;
  std::map<std::string, TypePtr, std::less<>> type_aliases_;
};

}  // namespace dlk

#endif  // DLK_ENV_H_
