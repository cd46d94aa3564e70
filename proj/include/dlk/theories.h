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

#ifndef DLK_THEORIES_H_
#define DLK_THEORIES_H_

#include <string>
#include <string_view>
#include <vector>

#include "dlk/env.h"
#include "dlk/syntax.h"

namespace dlk {

// Pack ids accepted by load_theory: "nat", "sets", "reals".
const std::vector<std::string>& known_packs();

// Surface text of a pack's declarations (type constructors and the `0`
// constant are added programmatically and are not part of the text).
std::string_view pack_source(std::string_view id);

// The Mathematics theory (the Consistent definition) plus the given packs.
// E010 for an unknown pack id.
TheoryEnv load_theory(const std::vector<std::string>& packs);
// Loading a pack twice is a no-op.
TheoryEnv load_pack(TheoryEnv env, std::string_view id);

// Elaborating updates. Each returns the extended environment; the argument
// is never modified.
TheoryEnv add_definition(TheoryEnv env, const std::string& name,
                         const std::vector<Param>& params, const NodePtr& body,
                         const Span& span = {});
TheoryEnv add_procedure(TheoryEnv env, const std::string& name,
                        const std::vector<Param>& params, const NodePtr& body,
                        const Span& span = {});
TheoryEnv add_axiom(TheoryEnv env, const std::string& name,
                    const NodePtr& statement, const Span& span = {});
TheoryEnv add_constant(TheoryEnv env, const std::string& name,
                       const TypeSyntax& type, const Span& span = {});
TheoryEnv add_type_alias(TheoryEnv env, const std::string& name,
                         const TypeSyntax& type, const Span& span = {});

// Dispatches a constant, type alias, axiom, definition or procedure
// declaration to the matching update. `origin` tags the entries (pack id).
TheoryEnv declare(TheoryEnv env, const Declaration& decl,
                  const std::string& origin = {});

}  // namespace dlk

#endif  // DLK_THEORIES_H_
