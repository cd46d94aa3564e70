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

#include "dlk/deduction.h"

#include <fmt/format.h>

#include <algorithm>
#include <utility>

#include "dlk/abstraction.h"
#include "dlk/typecheck.h"

namespace dlk {

namespace {

struct RuleEntry {
  RuleName rule;
  std::string_view name;
  std::string_view schema;
};

constexpr RuleEntry kRules[] = {
    {RuleName::kImpliesIntro, "implies_intro", "(Psi |- Phi) |- (Psi => Phi)"},
    {RuleName::kImpliesElim, "implies_elim", "Psi, (Psi => Phi) |- Phi"},
    {RuleName::kAndIntro, "and_intro", "Psi, Phi |- (Psi /\\ Phi)"},
    {RuleName::kAndElimLeft, "and_elim_left", "(Psi /\\ Phi) |- Psi"},
    {RuleName::kAndElimRight, "and_elim_right", "(Psi /\\ Phi) |- Phi"},
    {RuleName::kOrIntroLeft, "or_intro_left", "Psi |- (Psi \\/ Phi)"},
    {RuleName::kOrIntroRight, "or_intro_right", "Phi |- (Psi \\/ Phi)"},
    {RuleName::kOrElimDs, "or_elim_ds", "not Psi, (Psi \\/ Phi) |- Phi"},
    {RuleName::kCases, "cases",
     "(Psi \\/ Phi), (Psi |- Theta), (Phi |- Theta) |- Theta"},
    {RuleName::kContradictionIntro, "contradiction_intro",
     "(Psi |- (Phi /\\ not Phi)) |- not Psi"},
    {RuleName::kDnegElim, "dneg_elim", "not not Psi |- Psi"},
    {RuleName::kSoundness, "soundness", "(|- Psi) |- Psi"},
    {RuleName::kAdequacyIntro, "adequacy_intro",
     "(Phi |- Psi) |- (|- (Phi |- Psi)); theorem Phi |- (|- Phi)"},
    {RuleName::kAdequacyElim, "adequacy_elim",
     "(|- (Phi |- Psi)) |- (Phi |- Psi)"},
    {RuleName::kForallIntro, "forall_intro",
     "fix a : T ... Phi[a] |- forall [x: T] -> Phi[x]"},
    {RuleName::kForallElim, "forall_elim",
     "forall [x: T] -> Phi[x] |- Phi[t]  (with t : T)"},
    {RuleName::kExistsIntro, "exists_intro",
     "Phi[t] |- exists [x: T] -> Phi[x]  (with t : T)"},
    {RuleName::kExistsElim, "exists_elim",
     "exists [x: T] -> Phi[x] |- Phi[w]  (with w fresh, scoped to the box)"},
    {RuleName::kIffIntro, "iff_intro",
     "(Psi => Phi), (Phi => Psi) |- (Psi <=> Phi)"},
    {RuleName::kIffElimLr, "iff_elim_lr",
     "(Psi <=> Phi) |- (Psi => Phi); (Psi <=> Phi), Psi |- Phi"},
    {RuleName::kIffElimRl, "iff_elim_rl",
     "(Psi <=> Phi) |- (Phi => Psi); (Psi <=> Phi), Phi |- Psi"},
    {RuleName::kEqRefl, "eq_refl", "|- t = t"},
    {RuleName::kEqSubst, "eq_subst", "s = t, Phi[s] |- Phi[t]"},
    {RuleName::kUnfoldDef, "unfold_def",
     "Phi[D] |- Phi[definiens of D], and back"},
    {RuleName::kAxiom, "axiom", "|- A  for an axiom A"},
    {RuleName::kTheoremRef, "theorem_ref", "|- T  for a registered theorem T"},
};

const RuleEntry& entry(RuleName rule) {
  for (const auto& e : kRules) {
    if (e.rule == rule) return e;
  }
  return kRules[0];
}

bool same(const NodePtr& a, const NodePtr& b) { return alpha_equal(*a, *b); }

bool is(const NodePtr& n, NodeKind kind) { return n->kind == kind; }

NodePtr binary(NodeKind kind, NodePtr a, NodePtr b) {
  return make_node(kind, {std::move(a), std::move(b)});
}

NodePtr negation(NodePtr a) { return make_node(NodeKind::kNot, {std::move(a)}); }

NodePtr provable(NodePtr a) { return make_turnstile({}, {std::move(a)}); }

// `Psi |- Phi` with exactly one formula on each side.
bool is_sequent(const NodePtr& n) {
  return is(n, NodeKind::kTurnstile) && n->antecedents == 1 &&
         n->children.size() == 2;
}

// `|- Phi`.
bool is_provable(const NodePtr& n) {
  return is(n, NodeKind::kTurnstile) && n->antecedents == 0 &&
         n->children.size() == 1;
}

// Conclusion computation for the rules whose result is a function of the
// premises. `labels` names the premises in diagnostics.
class Schema {
 public:
  Schema(RuleName rule, const std::vector<NodePtr>& premises,
         std::vector<std::string> labels, NodePtr payload, Span span)
      : rule_(rule),
        p_(premises),
        labels_(std::move(labels)),
        payload_(std::move(payload)),
        span_(span) {}

  NodePtr conclude() {
    switch (rule_) {
      case RuleName::kAndIntro:
        arity(2);
        return binary(NodeKind::kAnd, p_[0], p_[1]);
      case RuleName::kAndElimLeft:
        arity(1);
        return shape(0, NodeKind::kAnd, "Psi /\\ Phi")->children[0];
      case RuleName::kAndElimRight:
        arity(1);
        return shape(0, NodeKind::kAnd, "Psi /\\ Phi")->children[1];
      case RuleName::kImpliesElim:
        return implies_elim();
      case RuleName::kImpliesIntro: {
        arity(1);
        const NodePtr& s = sequent(0);
        return binary(NodeKind::kImplies, s->children[0], s->children[1]);
      }
      case RuleName::kOrIntroLeft:
        arity(1);
        return binary(NodeKind::kOr, p_[0], need_payload());
      case RuleName::kOrIntroRight:
        arity(1);
        return binary(NodeKind::kOr, need_payload(), p_[0]);
      case RuleName::kOrElimDs:
        return or_elim_ds();
      case RuleName::kCases:
        return cases();
      case RuleName::kContradictionIntro: {
        arity(1);
        const NodePtr& s = sequent(0);
        const NodePtr& c = s->children[1];
        if (!is(c, NodeKind::kAnd) || !is(c->children[1], NodeKind::kNot) ||
            !same(c->children[0], c->children[1]->children[0])) {
          mismatch(fmt::format("the conclusion of {} must have shape "
                               "Phi /\\ not Phi, found {}",
                               labels_[0], render(*c)));
        }
        return negation(s->children[0]);
      }
      case RuleName::kDnegElim: {
        arity(1);
        const NodePtr& n = shape(0, NodeKind::kNot, "not not Psi");
        if (!is(n->children[0], NodeKind::kNot)) {
          mismatch(fmt::format("{} must have shape not not Psi, found {}",
                               labels_[0], render(*n)));
        }
        return n->children[0]->children[0];
      }
      case RuleName::kSoundness:
        arity(1);
        return provable_premise(0)->children[0];
      case RuleName::kAdequacyIntro:
        arity(1);
        return provable(p_[0]);
      case RuleName::kAdequacyElim: {
        arity(1);
        const NodePtr& inner = provable_premise(0)->children[0];
        if (!is(inner, NodeKind::kTurnstile)) {
          mismatch(fmt::format("{} must have shape |- (Phi |- Psi), found {}",
                               labels_[0], render(*p_[0])));
        }
        return inner;
      }
      case RuleName::kIffIntro:
        return iff_intro();
      case RuleName::kIffElimLr:
        return iff_elim(true);
      case RuleName::kIffElimRl:
        return iff_elim(false);
      case RuleName::kForallElim: {
        arity(1);
        const NodePtr& q = shape(0, NodeKind::kForall, "forall [x: T] -> Phi");
        return substitute(q->children[0], q->text, need_payload());
      }
      case RuleName::kEqRefl: {
        arity(0);
        NodePtr t = need_payload();
        return make_relation("=", t, t);
      }
      default:
        mismatch(fmt::format("{} needs a derivation context",
                             entry(rule_).name));
    }
  }

  [[noreturn]] void mismatch(std::string message) const {
    fail(codes::kRuleMismatch, span_, std::move(message),
         {fmt::format("schema {}: {}", entry(rule_).name,
                      entry(rule_).schema)});
  }

 private:
  void arity(std::size_t n) const {
    if (p_.size() != n) {
      mismatch(fmt::format("{} takes {} premise{}, got {}", entry(rule_).name,
                           n, n == 1 ? "" : "s", p_.size()));
    }
  }

  const NodePtr& shape(std::size_t i, NodeKind kind,
                       std::string_view schema) const {
    if (!is(p_[i], kind)) {
      mismatch(fmt::format("{} must have shape {}, found {}", labels_[i],
                           schema, render(*p_[i])));
    }
    return p_[i];
  }

  const NodePtr& sequent(std::size_t i) const {
    if (!is_sequent(p_[i])) {
      mismatch(fmt::format("{} must be a hypothesis box or have shape "
                           "Psi |- Phi, found {}",
                           labels_[i], render(*p_[i])));
    }
    return p_[i];
  }

  const NodePtr& provable_premise(std::size_t i) const {
    if (!is_provable(p_[i])) {
      mismatch(fmt::format("{} must have shape |- Psi, found {}", labels_[i],
                           render(*p_[i])));
    }
    return p_[i];
  }

  NodePtr need_payload() const {
    if (!payload_) {
      mismatch(fmt::format("{} needs a term after `with`", entry(rule_).name));
    }
    return payload_;
  }

  NodePtr implies_elim() const {
    arity(2);
    for (int o = 0; o < 2; ++o) {
      const NodePtr& minor = p_[o];
      const NodePtr& major = p_[1 - o];
      if ((is(major, NodeKind::kImplies) || is_sequent(major)) &&
          same(major->children[0], minor)) {
        return major->children[1];
      }
    }
    mismatch(fmt::format("implies_elim needs Psi and Psi => Phi, found {} "
                         "and {}",
                         render(*p_[0]), render(*p_[1])));
  }

  NodePtr or_elim_ds() const {
    arity(2);
    for (int o = 0; o < 2; ++o) {
      const NodePtr& neg = p_[o];
      const NodePtr& dis = p_[1 - o];
      if (is(neg, NodeKind::kNot) && is(dis, NodeKind::kOr) &&
          same(neg->children[0], dis->children[0])) {
        return dis->children[1];
      }
    }
    mismatch(fmt::format("or_elim_ds needs not Psi and Psi \\/ Phi, found {} "
                         "and {}",
                         render(*p_[0]), render(*p_[1])));
  }

  NodePtr cases() const {
    arity(3);
    const NodePtr& d = shape(0, NodeKind::kOr, "Psi \\/ Phi");
    const NodePtr& left = sequent(1);
    const NodePtr& right = sequent(2);
    if (!same(left->children[0], d->children[0])) {
      mismatch(fmt::format("{} must assume {}, found {}", labels_[1],
                           render(*d->children[0]),
                           render(*left->children[0])));
    }
    if (!same(right->children[0], d->children[1])) {
      mismatch(fmt::format("{} must assume {}, found {}", labels_[2],
                           render(*d->children[1]),
                           render(*right->children[0])));
    }
    if (!same(left->children[1], right->children[1])) {
      mismatch(fmt::format("both cases must conclude the same formula, found "
                           "{} and {}",
                           render(*left->children[1]),
                           render(*right->children[1])));
    }
    return left->children[1];
  }

  NodePtr iff_intro() const {
    arity(2);
    const NodePtr& a = shape(0, NodeKind::kImplies, "Psi => Phi");
    const NodePtr& b = shape(1, NodeKind::kImplies, "Phi => Psi");
    if (!same(a->children[0], b->children[1]) ||
        !same(a->children[1], b->children[0])) {
      mismatch(fmt::format("iff_intro needs converse implications, found {} "
                           "and {}",
                           render(*a), render(*b)));
    }
    return binary(NodeKind::kIff, a->children[0], a->children[1]);
  }

  NodePtr iff_elim(bool left_to_right) const {
    std::size_t from = left_to_right ? 0 : 1;
    std::size_t to = 1 - from;
    if (p_.size() == 1) {
      const NodePtr& e = shape(0, NodeKind::kIff, "Psi <=> Phi");
      return binary(NodeKind::kImplies, e->children[from], e->children[to]);
    }
    arity(2);
    for (int o = 0; o < 2; ++o) {
      const NodePtr& e = p_[o];
      const NodePtr& side = p_[1 - o];
      if (is(e, NodeKind::kIff) && same(e->children[from], side)) {
        return e->children[to];
      }
    }
    mismatch(fmt::format("{} needs Psi <=> Phi and its {} side, found {} and "
                         "{}",
                         entry(rule_).name, left_to_right ? "left" : "right",
                         render(*p_[0]), render(*p_[1])));
  }

  RuleName rule_;
  const std::vector<NodePtr>& p_;
  std::vector<std::string> labels_;
  NodePtr payload_;
  Span span_;
};

// True if `after` is `before` with some occurrences of `from` replaced by
// `to`, never under a binder that captures a variable of `from` or `to`.
bool replaces(const NodePtr& before, const NodePtr& after, const NodePtr& from,
              const NodePtr& to, std::vector<std::string>& bound) {
  if (same(before, after)) return true;
  auto captured = [&](const NodePtr& n) {
    for (const auto& v : free_identifiers(*n)) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) return true;
    }
    return false;
  };
  if (same(before, from) && same(after, to) && !captured(from) &&
      !captured(to)) {
    return true;
  }
  const Node& a = *before;
  const Node& b = *after;
  if (a.kind != b.kind || a.text != b.text || a.names != b.names ||
      a.antecedents != b.antecedents ||
      a.children.size() != b.children.size())
    return false;
  if (a.type.has_value() != b.type.has_value() ||
      (a.type && !structurally_equal(*a.type, *b.type)))
    return false;
  std::size_t pushed = 0;
  if (is_binder(a.kind)) {
    bound.push_back(a.text);
    pushed = 1;
  } else if (a.kind == NodeKind::kLet) {
    bound.insert(bound.end(), a.names.begin(), a.names.end());
    pushed = a.names.size();
  }
  bool ok = true;
  for (std::size_t i = 0; ok && i < a.children.size(); ++i) {
    ok = replaces(a.children[i], b.children[i], from, to, bound);
  }
  bound.resize(bound.size() - pushed);
  return ok;
}

// Expands every occurrence of definition `d`.
NodePtr unfold(const NodePtr& n, const DefinitionInfo& d,
               std::vector<std::string>& bound) {
  auto shadowed = [&] {
    return std::find(bound.begin(), bound.end(), d.name) != bound.end();
  };
  if (d.params.empty() && is(n, NodeKind::kIdentifier) && n->text == d.name &&
      !shadowed()) {
    return d.body;
  }
  if (!d.params.empty() && is(n, NodeKind::kApply) &&
      is(n->children[0], NodeKind::kIdentifier) &&
      n->children[0]->text == d.name && !shadowed() &&
      n->children.size() == d.params.size() + 1) {
    // Rename parameters apart first so the substitution is simultaneous.
    NodePtr body = d.body;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      body = substitute(body, d.params[i],
                        make_identifier(fmt::format("%{}", i)));
    }
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      NodePtr arg = unfold(n->children[i + 1], d, bound);
      body = substitute(body, fmt::format("%{}", i), arg);
    }
    return body;
  }
  if (n->children.empty()) return n;
  std::size_t pushed = 0;
  if (is_binder(n->kind)) {
    bound.push_back(n->text);
    pushed = 1;
  } else if (n->kind == NodeKind::kLet) {
    bound.insert(bound.end(), n->names.begin(), n->names.end());
    pushed = n->names.size();
  }
  std::vector<NodePtr> children;
  bool changed = false;
  for (const auto& c : n->children) {
    children.push_back(unfold(c, d, bound));
    changed = changed || children.back() != c;
  }
  bound.resize(bound.size() - pushed);
  if (!changed) return n;
  auto copy = std::make_shared<Node>(*n);
  copy->children = std::move(children);
  return copy;
}

NodePtr unfold(const NodePtr& n, const DefinitionInfo& d) {
  std::vector<std::string> bound;
  return unfold(n, d, bound);
}

// A proof-local constant: `fix` variable or `obtain` witness.
struct Eigen {
  std::string name;
  TypePtr type;
  std::size_t intro = 0;
  std::size_t first = 0;  // scope, inclusive step indices
  std::size_t last = 0;
};

class ProofChecker {
 public:
  ProofChecker(const TheoryEnv& env, const Derivation& d)
      : env_(env), d_(d), n_(d.steps.size()) {}

  Verified run() {
    TypingContext goal_ctx(env_);
    check_sentence(goal_ctx, *d_.goal);
    require_holes_solved(goal_ctx);
    Proposition goal = abstract_sentence(env_, d_.goal, {}, d_.theory);
    if (n_ == 0) {
      fail(codes::kGoalMismatch, d_.span,
           fmt::format("proof '{}' has no steps", d_.name));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (d_.steps[i].number != static_cast<int>(i) + 1) {
        fail(codes::kDanglingReference, d_.steps[i].span,
             fmt::format("step numbered {} where {} was expected",
                         d_.steps[i].number, i + 1),
             {"steps are numbered 1, 2, ... in order"});
      }
    }
    structure();
    formulas_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) process(j);

    const ProofStep& last = d_.steps.back();
    const NodePtr& final_formula = formulas_.back();
    if (!final_formula || !same(final_formula, d_.goal)) {
      fail(codes::kGoalMismatch, last.span,
           fmt::format("the final step does not establish the goal of '{}'",
                       d_.name),
           {fmt::format("goal: {}", render(*d_.goal)),
            fmt::format("final step: {}",
                        final_formula ? render(*final_formula)
                                      : std::string("fix ") + last.fix_name)});
    }
    Verified out{d_.name, goal, {}};
    for (std::size_t k : containing_.back()) {
      out.open_hypotheses.push_back(d_.steps[k].number);
    }
    return out;
  }

 private:
  bool opener(std::size_t i) const {
    auto k = d_.steps[i].keyword;
    return k == StepKeyword::kAssume || k == StepKeyword::kFix;
  }

  void structure() {
    containing_.resize(n_);
    box_end_.assign(n_, 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n_; ++i) {
      const ProofStep& s = d_.steps[i];
      while (!stack.empty() &&
             d_.steps[stack.back()].depth >= s.depth) {
        stack.pop_back();
      }
      if (s.depth != static_cast<int>(stack.size())) {
        fail(codes::kDanglingReference, s.span,
             fmt::format("step {} is nested without an enclosing assume or "
                         "fix",
                         s.number));
      }
      containing_[i] = stack;
      if (opener(i)) stack.push_back(i);
    }
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t end = k;
      while (end + 1 < n_ && d_.steps[end + 1].depth > d_.steps[k].depth) ++end;
      box_end_[k] = end;
    }
  }

  // End of the box enclosing step k (inclusive), for obtain scopes.
  std::size_t scope_end(std::size_t k) const {
    std::size_t end = k;
    while (end + 1 < n_ && d_.steps[end + 1].depth >= d_.steps[k].depth) ++end;
    return end;
  }

  bool accessible(std::size_t r, std::size_t j) const {
    const auto& a = containing_[r];
    const auto& b = containing_[j];
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
  }

  bool inside(std::size_t j, std::size_t k) const {
    const auto& c = containing_[j];
    return std::find(c.begin(), c.end(), k) != c.end();
  }

  std::size_t ref_index(const ProofStep& s, int r) const {
    if (r < 1 || r >= s.number) {
      fail(codes::kDanglingReference, s.rule_span,
           fmt::format("step {} cites {}, which is not an earlier step",
                       s.number, r));
    }
    return static_cast<std::size_t>(r - 1);
  }

  NodePtr plain_premise(std::size_t j, int r) const {
    const ProofStep& s = d_.steps[j];
    std::size_t i = ref_index(s, r);
    if (!accessible(i, j) || (opener(i) && !inside(j, i))) {
      fail(codes::kDanglingReference, s.rule_span,
           fmt::format("step {} cannot cite step {}: it lies in a closed "
                       "hypothesis box",
                       s.number, r));
    }
    if (!formulas_[i]) {
      fail(codes::kRuleMismatch, s.rule_span,
           fmt::format("step {} is a `fix` and has no formula to cite", r));
    }
    return formulas_[i];
  }

  // A box (hypothesis and last direct step) as a sequent, or a sequent-
  // shaped step cited as a premise.
  NodePtr box_premise(std::size_t j, int r, StepKeyword want) const {
    const ProofStep& s = d_.steps[j];
    std::size_t k = ref_index(s, r);
    if (!opener(k)) return plain_premise(j, r);
    if (!accessible(k, j)) {
      fail(codes::kDanglingReference, s.rule_span,
           fmt::format("step {} cannot cite step {}: it lies in a closed "
                       "hypothesis box",
                       s.number, r));
    }
    if (inside(j, k)) {
      fail(codes::kRuleMismatch, s.rule_span,
           fmt::format("the box opened at step {} is still open at step {}",
                       r, s.number),
           {"discharge a box from a step indented at the level of its opener"});
    }
    if (d_.steps[k].keyword != want) {
      fail(codes::kRuleMismatch, s.rule_span,
           fmt::format("{} needs a box opened by `{}`, but step {} is `{}`",
                       s.rule, keyword_name(want), r,
                       keyword_name(d_.steps[k].keyword)));
    }
    std::size_t last = k;
    for (std::size_t i = k + 1; i <= box_end_[k]; ++i) {
      if (containing_[i].size() == containing_[k].size() + 1) last = i;
    }
    if (last == k || opener(last)) {
      fail(codes::kRuleMismatch, s.rule_span,
           fmt::format("the box opened at step {} has no conclusion", r));
    }
    if (want == StepKeyword::kFix) return formulas_[last];
    return make_turnstile({formulas_[k]}, {formulas_[last]});
  }

  bool in_scope(const Eigen& e, std::size_t j) const {
    return e.first <= j && j <= e.last;
  }

  void fresh(std::size_t j, const std::string& name) const {
    const ProofStep& s = d_.steps[j];
    if (is_global_name(env_, name)) {
      fail(codes::kFreshness, s.span,
           fmt::format("'{}' is not fresh: it already names a theory "
                       "constant or definition",
                       name));
    }
    for (const auto& e : eigens_) {
      if (e.name == name && in_scope(e, j)) {
        fail(codes::kFreshness, s.span,
             fmt::format("'{}' is not fresh: it was introduced at step {}",
                         name, d_.steps[e.intro].number));
      }
    }
  }

  void no_escape(std::size_t j, const Node& n) const {
    std::set<std::string> names = free_identifiers(n);
    for (const auto& e : eigens_) {
      if (!names.count(e.name) || in_scope(e, j) ||
          is_global_name(env_, e.name))
        continue;
      bool shadowed = false;
      for (const auto& other : eigens_) {
        shadowed = shadowed || (other.name == e.name && in_scope(other, j));
      }
      if (shadowed) continue;
      fail(codes::kFreshness, d_.steps[j].span,
           fmt::format("'{}' escapes its scope: it was introduced at step {} "
                       "and is not available at step {}",
                       e.name, d_.steps[e.intro].number, d_.steps[j].number));
    }
  }

  TypingContext context(std::size_t j) const {
    TypingContext ctx(env_);
    for (const auto& e : eigens_) {
      if (in_scope(e, j)) ctx.push(e.name, e.type, true);
    }
    return ctx;
  }

  TypePtr closed_type(const TypeSyntax& t) const {
    TypingContext ctx(env_);
    TypePtr out = resolve_type(ctx, t);
    require_holes_solved(ctx);
    return out;
  }

  void typecheck_formula(std::size_t j, const NodePtr& f) {
    no_escape(j, *f);
    TypingContext ctx = context(j);
    check_sentence(ctx, *f);
    require_holes_solved(ctx);
  }

  void typecheck_witness(std::size_t j, const NodePtr& term,
                         const TypeSyntax& binder) {
    no_escape(j, *term);
    TypingContext ctx = context(j);
    TypePtr want = resolve_type(ctx, binder);
    TypePtr got = infer_term(ctx, *term);
    ctx.subst = unify(want, got, ctx.subst, term->span);
    require_holes_solved(ctx);
  }

  [[noreturn]] void mismatch(std::size_t j, RuleName rule,
                             const NodePtr& expected) const {
    const ProofStep& s = d_.steps[j];
    fail(codes::kRuleMismatch, s.span,
         fmt::format("step {} does not follow by {}", s.number, s.rule),
         {fmt::format("the rule yields: {}", render(*expected)),
          fmt::format("the step states: {}", render(*formulas_[j])),
          fmt::format("schema {}: {}", rule_name(rule), entry(rule).schema)});
  }

  [[noreturn]] void reject(std::size_t j, RuleName rule,
                           std::string message) const {
    fail(codes::kRuleMismatch, d_.steps[j].span, std::move(message),
         {fmt::format("schema {}: {}", rule_name(rule), entry(rule).schema)});
  }

  void refs_exactly(std::size_t j, RuleName rule, std::size_t n) const {
    const ProofStep& s = d_.steps[j];
    if (s.refs.size() != n) {
      reject(j, rule,
             fmt::format("{} cites {} step{}, got {}", rule_name(rule), n,
                         n == 1 ? "" : "s", s.refs.size()));
    }
  }

  std::string payload_name(std::size_t j, RuleName rule) const {
    const NodePtr& p = d_.steps[j].payload;
    if (!p || !is(p, NodeKind::kIdentifier)) {
      reject(j, rule, fmt::format("{} needs a name after `with`",
                                  rule_name(rule)));
    }
    return p->text;
  }

  void process(std::size_t j) {
    const ProofStep& s = d_.steps[j];
    if (s.keyword == StepKeyword::kFix) {
      fresh(j, s.fix_name);
      eigens_.push_back(
          Eigen{s.fix_name, closed_type(*s.fix_type), j, j + 1, box_end_[j]});
      return;
    }
    formulas_[j] = s.formula;
    if (s.keyword == StepKeyword::kAssume) {
      typecheck_formula(j, s.formula);
      return;
    }
    auto rule = parse_rule_name(s.rule);
    if (!rule) {
      fail(codes::kRuleMismatch, s.rule_span,
           fmt::format("unknown rule '{}'", s.rule));
    }
    bool obtain = s.keyword == StepKeyword::kObtain;
    if (obtain != (*rule == RuleName::kExistsElim)) {
      fail(codes::kRuleMismatch, s.rule_span,
           obtain ? "an `obtain` step must be justified by exists_elim"
                  : "exists_elim introduces a witness; write the step with "
                    "`obtain`");
    }
    if (obtain) return exists_elim(j);
    typecheck_formula(j, s.formula);
    check_rule(j, *rule);
  }

  void exists_elim(std::size_t j) {
    const ProofStep& s = d_.steps[j];
    RuleName rule = RuleName::kExistsElim;
    refs_exactly(j, rule, 1);
    NodePtr premise = plain_premise(j, s.refs[0]);
    if (!is(premise, NodeKind::kExists)) {
      reject(j, rule,
             fmt::format("step {} must have shape exists [x: T] -> Phi, "
                         "found {}",
                         s.refs[0], render(*premise)));
    }
    std::string witness = payload_name(j, rule);
    fresh(j, witness);
    eigens_.push_back(Eigen{witness, closed_type(*premise->type), j, j,
                            scope_end(j)});
    typecheck_formula(j, s.formula);
    NodePtr expected = substitute(premise->children[0], premise->text,
                                  make_identifier(witness));
    if (!same(expected, s.formula)) mismatch(j, rule, expected);
  }

  bool in_witness_scope(std::size_t i) const {
    for (const auto& e : eigens_) {
      if (d_.steps[e.intro].keyword == StepKeyword::kObtain && in_scope(e, i))
        return true;
    }
    return false;
  }

  NodePtr statement(std::size_t j, RuleName rule, const std::string& name,
                    bool axioms, bool theorems) const {
    if (axioms) {
      if (const AxiomInfo* a = env_.axiom(name)) return a->statement.formula;
    }
    if (theorems) {
      if (const TheoremInfo* t = env_.theorem(name))
        return t->statement.formula;
    }
    reject(j, rule, fmt::format("no {} named '{}'",
                                axioms && theorems ? "axiom or theorem"
                                : axioms           ? "axiom"
                                                   : "theorem",
                                name));
  }

  void cite_statement(std::size_t j, RuleName rule) const {
    const ProofStep& s = d_.steps[j];
    refs_exactly(j, rule, 0);
    bool axioms = rule == RuleName::kAxiom;
    if (s.payload) {
      NodePtr stated =
          statement(j, rule, payload_name(j, rule), axioms, !axioms);
      if (!same(stated, s.formula)) mismatch(j, rule, stated);
      return;
    }
    if (axioms) {
      for (const auto& a : env_.axioms()) {
        if (same(a.statement.formula, s.formula)) return;
      }
    } else {
      for (const auto& t : env_.theorems()) {
        if (same(t.statement.formula, s.formula)) return;
      }
    }
    reject(j, rule, fmt::format("no {} states {}",
                                axioms ? "axiom" : "registered theorem",
                                render(*s.formula)));
  }

  std::vector<std::string> labels(const ProofStep& s) const {
    std::vector<std::string> out;
    for (int r : s.refs) out.push_back(fmt::format("step {}", r));
    return out;
  }

  void check_rule(std::size_t j, RuleName rule) {
    const ProofStep& s = d_.steps[j];
    const NodePtr& f = s.formula;
    switch (rule) {
      case RuleName::kAxiom:
      case RuleName::kTheoremRef:
        return cite_statement(j, rule);
      case RuleName::kUnfoldDef:
        return unfold_def(j);
      case RuleName::kEqSubst:
        return eq_subst(j);
      case RuleName::kExistsIntro: {
        refs_exactly(j, rule, 1);
        NodePtr premise = plain_premise(j, s.refs[0]);
        if (!is(f, NodeKind::kExists)) {
          reject(j, rule, fmt::format("exists_intro concludes a formula of "
                                      "shape exists [x: T] -> Phi, found {}",
                                      render(*f)));
        }
        if (!s.payload) reject(j, rule, "exists_intro needs `with <term>`");
        typecheck_witness(j, s.payload, *f->type);
        NodePtr instance = substitute(f->children[0], f->text, s.payload);
        if (!same(instance, premise)) {
          reject(j, rule,
                 fmt::format("instantiating the step at {} gives {}, which is "
                             "not step {}",
                             render(*s.payload), render(*instance),
                             s.refs[0]));
        }
        return;
      }
      case RuleName::kForallIntro: {
        refs_exactly(j, rule, 1);
        NodePtr body = box_premise(j, s.refs[0], StepKeyword::kFix);
        const ProofStep& fix = d_.steps[static_cast<std::size_t>(s.refs[0] - 1)];
        if (!is(f, NodeKind::kForall)) {
          reject(j, rule, fmt::format("forall_intro concludes a formula of "
                                      "shape forall [x: T] -> Phi, found {}",
                                      render(*f)));
        }
        if (!type_equal(*closed_type(*f->type), *closed_type(*fix.fix_type))) {
          reject(j, rule, fmt::format("the quantifier ranges over {} but step "
                                      "{} fixes {} : {}",
                                      render(*f->type), s.refs[0],
                                      fix.fix_name, render(*fix.fix_type)));
        }
        NodePtr instance = substitute(f->children[0], f->text,
                                      make_identifier(fix.fix_name));
        if (!same(instance, body)) {
          reject(j, rule, fmt::format("the box of step {} concludes {}, not {}",
                                      s.refs[0], render(*body),
                                      render(*instance)));
        }
        return;
      }
      case RuleName::kForallElim: {
        refs_exactly(j, rule, 1);
        NodePtr premise = plain_premise(j, s.refs[0]);
        if (is(premise, NodeKind::kForall) && s.payload) {
          typecheck_witness(j, s.payload, *premise->type);
        }
        break;
      }
      case RuleName::kAdequacyIntro:
        return adequacy_intro(j);
      case RuleName::kOrIntroLeft:
      case RuleName::kOrIntroRight: {
        if (!s.payload && is(f, NodeKind::kOr)) {
          refs_exactly(j, rule, 1);
          NodePtr premise = plain_premise(j, s.refs[0]);
          NodePtr side = f->children[rule == RuleName::kOrIntroLeft ? 0 : 1];
          if (!same(side, premise)) {
            reject(j, rule, fmt::format("the {} disjunct must be step {}",
                                        rule == RuleName::kOrIntroLeft
                                            ? "left"
                                            : "right",
                                        s.refs[0]));
          }
          return;
        }
        break;
      }
      case RuleName::kEqRefl:
        if (!s.payload) {
          refs_exactly(j, rule, 0);
          if (!is(f, NodeKind::kRelation) || f->text != "=" ||
              !same(f->children[0], f->children[1])) {
            reject(j, rule, fmt::format("eq_refl concludes t = t, found {}",
                                        render(*f)));
          }
          return;
        }
        break;
      default:
        break;
    }

    std::vector<NodePtr> premises;
    for (std::size_t i = 0; i < s.refs.size(); ++i) {
      bool box = (rule == RuleName::kImpliesIntro ||
                  rule == RuleName::kContradictionIntro) ||
                 (rule == RuleName::kCases && i > 0);
      premises.push_back(box ? box_premise(j, s.refs[i], StepKeyword::kAssume)
                             : plain_premise(j, s.refs[i]));
    }
    Schema schema(rule, premises, labels(s), s.payload, s.span);
    NodePtr expected = schema.conclude();
    if (same(expected, f)) return;
    // Proof by contradiction from a negated hypothesis concludes the
    // unnegated formula directly (contradiction_intro then dneg_elim).
    if (rule == RuleName::kContradictionIntro) {
      const NodePtr& hypothesis = expected->children[0];
      if (is(hypothesis, NodeKind::kNot) && same(hypothesis->children[0], f))
        return;
    }
    mismatch(j, rule, expected);
  }

  void adequacy_intro(std::size_t j) {
    const ProofStep& s = d_.steps[j];
    RuleName rule = RuleName::kAdequacyIntro;
    NodePtr proved;
    if (s.payload) {
      refs_exactly(j, rule, 0);
      proved = statement(j, rule, payload_name(j, rule), true, true);
    } else {
      refs_exactly(j, rule, 1);
      proved = plain_premise(j, s.refs[0]);
      std::size_t i = static_cast<std::size_t>(s.refs[0] - 1);
      bool sequent = is(proved, NodeKind::kTurnstile) && proved->antecedents > 0;
      if (!sequent && (!containing_[i].empty() || in_witness_scope(i))) {
        reject(j, rule,
               fmt::format("step {} depends on open hypotheses or local "
                           "witnesses, so it is not a theorem",
                           s.refs[0]));
      }
    }
    NodePtr expected = provable(proved);
    if (!same(expected, s.formula)) mismatch(j, rule, expected);
  }

  void unfold_def(std::size_t j) {
    const ProofStep& s = d_.steps[j];
    RuleName rule = RuleName::kUnfoldDef;
    refs_exactly(j, rule, 1);
    NodePtr premise = plain_premise(j, s.refs[0]);
    std::string name = payload_name(j, rule);
    const DefinitionInfo* d = env_.definition(name);
    if (!d) reject(j, rule, fmt::format("no definition named '{}'", name));
    if (!mentions(*premise, name) && !mentions(*s.formula, name)) {
      reject(j, rule, fmt::format("neither step {} nor step {} mentions '{}'",
                                  s.refs[0], s.number, name));
    }
    NodePtr a = unfold(premise, *d);
    NodePtr b = unfold(s.formula, *d);
    if (same(a, b)) return;
    // Classical double negation on either side, as in the "by definition"
    // steps that turn not Consistent into an existential.
    if (same(unfold(negation(negation(premise)), *d), b) ||
        same(a, unfold(negation(negation(s.formula)), *d))) {
      return;
    }
    reject(j, rule,
           fmt::format("after unfolding '{}', step {} and step {} differ",
                       name, s.refs[0], s.number),
           {fmt::format("step {} unfolds to: {}", s.refs[0], render(*a)),
            fmt::format("step {} unfolds to: {}", s.number, render(*b))});
  }

  [[noreturn]] void reject(std::size_t j, RuleName rule, std::string message,
                           std::vector<std::string> extra) const {
    extra.push_back(
        fmt::format("schema {}: {}", rule_name(rule), entry(rule).schema));
    fail(codes::kRuleMismatch, d_.steps[j].span, std::move(message),
         std::move(extra));
  }

  void eq_subst(std::size_t j) {
    const ProofStep& s = d_.steps[j];
    RuleName rule = RuleName::kEqSubst;
    refs_exactly(j, rule, 2);
    NodePtr p0 = plain_premise(j, s.refs[0]);
    NodePtr p1 = plain_premise(j, s.refs[1]);
    for (int o = 0; o < 2; ++o) {
      const NodePtr& eq = o == 0 ? p0 : p1;
      const NodePtr& phi = o == 0 ? p1 : p0;
      if (!is(eq, NodeKind::kRelation) || eq->text != "=") continue;
      std::vector<std::string> bound;
      if (replaces(phi, s.formula, eq->children[0], eq->children[1], bound) ||
          replaces(phi, s.formula, eq->children[1], eq->children[0], bound)) {
        return;
      }
    }
    reject(j, rule, fmt::format("step {} is not a rewrite of the cited "
                                "formula by the cited equation",
                                s.number));
  }

  const TheoryEnv& env_;
  const Derivation& d_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::size_t> box_end_;
  std::vector<NodePtr> formulas_;
  std::vector<Eigen> eigens_;
};

}  // namespace

const std::vector<RuleName>& all_rules() {
  static const std::vector<RuleName> rules = [] {
    std::vector<RuleName> out;
    for (const auto& e : kRules) out.push_back(e.rule);
    return out;
  }();
  return rules;
}

std::string_view rule_name(RuleName rule) { return entry(rule).name; }

std::optional<RuleName> parse_rule_name(std::string_view name) {
  for (const auto& e : kRules) {
    if (e.name == name) return e.rule;
  }
  return std::nullopt;
}

Verified check_derivation(const TheoryEnv& env, const Derivation& derivation) {
  return ProofChecker(env, derivation).run();
}

Proposition apply_rule(RuleName rule, const std::vector<Proposition>& premises,
                       const NodePtr& payload) {
  std::vector<NodePtr> nodes;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    nodes.push_back(premises[i].formula);
    labels.push_back(fmt::format("premise {}", i + 1));
  }
  Schema schema(rule, nodes, std::move(labels), payload, {});
  Proposition out;
  out.formula = schema.conclude();
  if (!premises.empty()) out.theory = premises[0].theory;
  return out;
}

TheoryEnv register_theorem(TheoryEnv env, const std::string& name,
                           const Derivation& derivation) {
  if (env.name_taken(name)) {
    fail(codes::kDuplicateName, derivation.span,
         fmt::format("cannot register theorem '{}': the name is taken", name));
  }
  Verified v = check_derivation(env, derivation);
  if (!v.open_hypotheses.empty()) {
    fail(codes::kOpenHypothesis, derivation.span,
         fmt::format("proof '{}' ends with open hypotheses at step{} {}", name,
                     v.open_hypotheses.size() == 1 ? "" : "s",
                     fmt::join(v.open_hypotheses, ", ")),
         {"close every assume/fix box before the final step"});
  }
  env.add_theorem(TheoremInfo{name, v.goal}, derivation.span);
  return env;
}

}  // namespace dlk
