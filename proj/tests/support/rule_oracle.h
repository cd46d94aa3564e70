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

// Two-valued reading of propositional formulas, and the propositional rules
// with their premise shapes written out by hand. A turnstile is read as
// "the conjunction of the antecedents materially implies the conjunction of
// the consequents".

#ifndef DLK_TESTS_SUPPORT_RULE_ORACLE_H_
#define DLK_TESTS_SUPPORT_RULE_ORACLE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlk/deduction.h"
#include "dlk/syntax.h"
#include "support/generators.h"

namespace dlk::testing {

using Valuation = std::map<std::string, bool>;

inline bool truth(const Node& n, const Valuation& v) {
  auto kid = [&](std::size_t i) { return truth(*n.children[i], v); };
  switch (n.kind) {
    case NodeKind::kIdentifier:
      return v.at(n.text);
    case NodeKind::kNot:
      return !kid(0);
    case NodeKind::kAnd:
      return kid(0) && kid(1);
    case NodeKind::kOr:
      return kid(0) || kid(1);
    case NodeKind::kImplies:
      return !kid(0) || kid(1);
    case NodeKind::kIff:
      return kid(0) == kid(1);
    case NodeKind::kTurnstile: {
      bool lhs = true;
      bool rhs = true;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i < n.antecedents) {
          lhs = lhs && kid(i);
        } else {
          rhs = rhs && kid(i);
        }
      }
      return !lhs || rhs;
    }
    default:
      throw std::logic_error("not propositional: " + render(n));
  }
}

inline Proposition prop(NodePtr formula) {
  Proposition p;
  p.formula = std::move(formula);
  return p;
}

struct Metas {
  NodePtr psi;
  NodePtr phi;
  NodePtr theta;
};

struct RuleCase {
  std::string label;
  RuleName rule;
  std::string family;
  int metas = 2;  // how many of Psi, Phi, Theta the schema mentions
  std::function<std::vector<NodePtr>(const Metas&)> premises;
  std::function<NodePtr(const Metas&)> payload;
};

inline std::vector<RuleCase> propositional_rules() {
  using M = const Metas&;
  auto none = [](M) { return NodePtr(); };
  return {
      {"implies_intro", RuleName::kImpliesIntro, "implies_intro", 2,
       [](M m) { return std::vector{sequent(m.psi, m.phi)}; }, none},
      {"implies_elim", RuleName::kImpliesElim, "implies_elim", 2,
       [](M m) { return std::vector{m.psi, implies(m.psi, m.phi)}; }, none},
      {"implies_elim (swapped)", RuleName::kImpliesElim, "implies_elim", 2,
       [](M m) { return std::vector{implies(m.psi, m.phi), m.psi}; }, none},
      {"and_intro", RuleName::kAndIntro, "and_intro", 2,
       [](M m) { return std::vector{m.psi, m.phi}; }, none},
      {"and_elim_left", RuleName::kAndElimLeft, "and_elim", 2,
       [](M m) { return std::vector{conj(m.psi, m.phi)}; }, none},
      {"and_elim_right", RuleName::kAndElimRight, "and_elim", 2,
       [](M m) { return std::vector{conj(m.psi, m.phi)}; }, none},
      {"or_intro_left", RuleName::kOrIntroLeft, "or_intro", 2,
       [](M m) { return std::vector{m.psi}; }, [](M m) { return m.phi; }},
      {"or_intro_right", RuleName::kOrIntroRight, "or_intro", 2,
       [](M m) { return std::vector{m.phi}; }, [](M m) { return m.psi; }},
      {"or_elim_ds", RuleName::kOrElimDs, "or_elim_ds", 2,
       [](M m) { return std::vector{negation(m.psi), disj(m.psi, m.phi)}; },
       none},
      {"cases", RuleName::kCases, "cases", 3,
       [](M m) {
         return std::vector{disj(m.psi, m.phi), sequent(m.psi, m.theta),
                            sequent(m.phi, m.theta)};
       },
       none},
      {"contradiction_intro", RuleName::kContradictionIntro,
       "contradiction_intro", 2,
       [](M m) {
         return std::vector{sequent(m.psi, conj(m.phi, negation(m.phi)))};
       },
       none},
      {"dneg_elim", RuleName::kDnegElim, "dneg_elim", 1,
       [](M m) { return std::vector{negation(negation(m.psi))}; }, none},
      {"iff_intro", RuleName::kIffIntro, "iff", 2,
       [](M m) {
         return std::vector{implies(m.psi, m.phi), implies(m.phi, m.psi)};
       },
       none},
      {"iff_elim_lr", RuleName::kIffElimLr, "iff", 2,
       [](M m) { return std::vector{iff(m.psi, m.phi)}; }, none},
      {"iff_elim_lr (detached)", RuleName::kIffElimLr, "iff", 2,
       [](M m) { return std::vector{iff(m.psi, m.phi), m.psi}; }, none},
      {"iff_elim_rl", RuleName::kIffElimRl, "iff", 2,
       [](M m) { return std::vector{iff(m.psi, m.phi)}; }, none},
      {"iff_elim_rl (detached)", RuleName::kIffElimRl, "iff", 2,
       [](M m) { return std::vector{iff(m.psi, m.phi), m.phi}; }, none},
  };
}

// The nine schema families of the propositional fragment.
inline const std::vector<std::string>& core_families() {
  static const std::vector<std::string> kFamilies{
      "implies_intro", "implies_elim", "and_intro",
      "and_elim",      "or_intro",     "or_elim_ds",
      "cases",         "contradiction_intro", "dneg_elim"};
  return kFamilies;
}

struct OracleResult {
  std::size_t instances = 0;
  std::size_t valuations = 0;
  std::vector<std::string> failures;
};

// Checks premises-true => conclusion-true for one rule over every choice of
// metavariables from `pool` and every valuation of `atoms`.
inline void check_rule(const RuleCase& rc, const std::vector<NodePtr>& pool,
                       const std::vector<std::string>& atoms,
                       OracleResult& out) {
  std::size_t n = pool.size();
  std::size_t k = rc.metas;
  std::size_t combos = 1;
  for (std::size_t i = 0; i < k; ++i) combos *= n;
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t r = c;
    Metas m;
    m.psi = pool[r % n];
    m.phi = k > 1 ? pool[(r /= n) % n] : pool[0];
    m.theta = k > 2 ? pool[(r /= n) % n] : pool[0];
    std::vector<Proposition> premises;
    for (const NodePtr& p : rc.premises(m)) premises.push_back(prop(p));
    Proposition conclusion;
    try {
      conclusion = apply_rule(rc.rule, premises, rc.payload(m));
    } catch (const KernelError& e) {
      out.failures.push_back(rc.label + ": rejected its own schema: " +
                             e.diagnostic().message);
      return;
    }
    ++out.instances;
    for (unsigned bits = 0; bits < (1u << atoms.size()); ++bits) {
      Valuation v;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        v[atoms[i]] = (bits >> i) & 1u;
      }
      ++out.valuations;
      bool all = true;
      for (const auto& p : premises) all = all && truth(*p.formula, v);
      if (all && !truth(*conclusion.formula, v)) {
        out.failures.push_back(rc.label + ": " + render(*conclusion.formula) +
                               " false where premises hold");
        return;
      }
    }
  }
}

}  // namespace dlk::testing

#endif  // DLK_TESTS_SUPPORT_RULE_ORACLE_H_
