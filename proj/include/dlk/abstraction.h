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

#ifndef DLK_ABSTRACTION_H_
#define DLK_ABSTRACTION_H_

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dlk/env.h"
#include "dlk/syntax.h"
#include "dlk/types.h"

namespace dlk {

// Turns a checked sentence into a proposition of `theory`. Every free
// identifier must be a theory-level name or one of `rigid` (proof-local
// constants); otherwise E040.
Proposition abstract_sentence(const TheoryEnv& env, const NodePtr& sentence,
                              const std::set<std::string>& rigid = {},
                              std::string theory = "Mathematics");

struct EvalBudget {
  std::uint64_t max_steps = 10000;
};

struct EnvFrame;

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Value {
  enum class Kind {
    kBoolean,
    kNatural,
    kString,
    kSyntax,
    kClosure,
    kPrimitive,
    kPair,
    kOpaque,
  };

  Kind kind = Kind::kBoolean;
  bool boolean = false;
  std::uint64_t natural = 0;
  std::string text;  // string contents, primitive or opaque name
  NodePtr syntax;    // quoted tree, or closure body
  std::vector<std::string> params;
  std::shared_ptr<EnvFrame> env;
  std::vector<ValuePtr> parts;  // pair components
};

std::string render(const Value& v);
bool value_equal(const Value& a, const Value& b);

struct EvalResult {
  ValuePtr value;
  TypePtr type;
  std::uint64_t steps = 0;
};

// Types `expression` in expression mode, then runs it call-by-value. E050
// when the budget runs out before a value is reached; E051 when evaluation
// meets something with no computational content.
EvalResult evaluate(const TheoryEnv& env, const NodePtr& expression,
                    EvalBudget budget = {});

// Value of a closed term; a quoted result is unquoted once.
ValuePtr abstract_term(const TheoryEnv& env, const NodePtr& term,
                       EvalBudget budget = {});

}  // namespace dlk

#endif  // DLK_ABSTRACTION_H_
