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

#include "dlk/abstraction.h"

#include <fmt/format.h>

#include "dlk/typecheck.h"

namespace dlk {

Proposition abstract_sentence(const TheoryEnv& env, const NodePtr& sentence,
                              const std::set<std::string>& rigid,
                              std::string theory) {
  for (const auto& name : free_identifiers(*sentence)) {
    if (rigid.count(name) || is_global_name(env, name)) continue;
    fail(codes::kOpenTerm, sentence->span,
         fmt::format("cannot abstract a sentence with free variable '{}'",
                     name),
         {"only closed sentences denote propositions"});
  }
  return Proposition{sentence, std::move(theory), sentence->span.valid()
                                                      ? std::optional<Span>(
                                                            sentence->span)
                                                      : std::nullopt};
}

}  // namespace dlk
