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

#ifndef DLK_DEDUCTION_H_
#define DLK_DEDUCTION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlk/env.h"
#include "dlk/syntax.h"

namespace dlk {

enum class RuleName {
  kImpliesIntro,
  kImpliesElim,
  kAndIntro,
  kAndElimLeft,
  kAndElimRight,
  kOrIntroLeft,
  kOrIntroRight,
  kOrElimDs,
  kCases,
  kContradictionIntro,
  kDnegElim,
  kSoundness,
  kAdequacyIntro,
  kAdequacyElim,
  kForallIntro,
  kForallElim,
  kExistsIntro,
  kExistsElim,
  kIffIntro,
  kIffElimLr,
  kIffElimRl,
  kEqRefl,
  kEqSubst,
  kUnfoldDef,
  kAxiom,
  kTheoremRef,
};

const std::vector<RuleName>& all_rules();
std::string_view rule_name(RuleName rule);
std::optional<RuleName> parse_rule_name(std::string_view name);

// A proof script: numbered steps whose nesting depth encodes hypothesis
// boxes (see ProofStep).
struct Derivation {
  std::string name;
  std::string theory = "Mathematics";
  NodePtr goal;
  std::vector<ProofStep> steps;
  Span span;
};

struct Verified {
  std::string name;
  Proposition goal;
  // Numbers of assume/fix steps whose boxes are still open at the end.
  std::vector<int> open_hypotheses;
};

// Checks every step against its rule schema and the final step against the
// goal. Errors: E030 rule mismatch, E031 freshness, E032 references and
// numbering, E033 goal mismatch, plus type errors from step formulas.
Verified check_derivation(const TheoryEnv& env, const Derivation& derivation);

// Conclusion of a rule whose result is determined by its premises and
// payload. Box-consuming rules take the box as a turnstile premise
// `hypothesis |- conclusion`. Rules that need a derivation context (axiom,
// theorem_ref, unfold_def, the quantifier rules other than forall_elim, and
// eq_subst) are rejected with E030.
Proposition apply_rule(RuleName rule, const std::vector<Proposition>& premises,
                       const NodePtr& payload = nullptr);

// Checks the derivation and records its goal as a theorem. E036 when a
// hypothesis is left open, E034 when the name is taken.
TheoryEnv register_theorem(TheoryEnv env, const std::string& name,
                           const Derivation& derivation);

}  // namespace dlk

#endif  // DLK_DEDUCTION_H_
