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

// Test-side generators: exhaustive enumerators and seeded random builders
// for formulas and types. Depth is tree height: a leaf has depth 1.

#ifndef DLK_TESTS_SUPPORT_GENERATORS_H_
#define DLK_TESTS_SUPPORT_GENERATORS_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dlk/syntax.h"
#include "dlk/types.h"

namespace dlk::testing {

using Unary = std::function<NodePtr(NodePtr)>;
using Binary = std::function<NodePtr(NodePtr, NodePtr)>;

struct Grammar {
  std::vector<NodePtr> leaves;
  std::vector<Unary> unary;
  std::vector<Binary> binary;
};

inline NodePtr atom(const std::string& name) { return make_identifier(name); }

inline NodePtr negation(NodePtr a) {
  return make_node(NodeKind::kNot, {std::move(a)});
}
inline NodePtr conj(NodePtr a, NodePtr b) {
  return make_node(NodeKind::kAnd, {std::move(a), std::move(b)});
}
inline NodePtr disj(NodePtr a, NodePtr b) {
  return make_node(NodeKind::kOr, {std::move(a), std::move(b)});
}
inline NodePtr implies(NodePtr a, NodePtr b) {
  return make_node(NodeKind::kImplies, {std::move(a), std::move(b)});
}
inline NodePtr iff(NodePtr a, NodePtr b) {
  return make_node(NodeKind::kIff, {std::move(a), std::move(b)});
}
inline NodePtr sequent(NodePtr a, NodePtr b) {
  return make_turnstile({std::move(a)}, {std::move(b)});
}
inline NodePtr provable(NodePtr a) { return make_turnstile({}, {std::move(a)}); }
inline NodePtr forall_nat(const std::string& var, NodePtr body) {
  return make_binder(NodeKind::kForall, var, make_type("Nat"), std::move(body));
}
inline NodePtr exists_nat(const std::string& var, NodePtr body) {
  return make_binder(NodeKind::kExists, var, make_type("Nat"), std::move(body));
}

// Atoms {P, Q} with not, /\, \/, =>, <=>.
inline Grammar connective_grammar() {
  return {{atom("P"), atom("Q")}, {negation}, {conj, disj, implies, iff}};
}

// The connectives plus turnstiles and quantifiers.
inline Grammar sentence_grammar(std::vector<NodePtr> leaves,
                                const std::string& var = "x") {
  return {std::move(leaves),
          {negation, provable,
           [var](NodePtr a) { return forall_nat(var, std::move(a)); },
           [var](NodePtr a) { return exists_nat(var, std::move(a)); }},
          {conj, disj, implies, iff, sequent}};
}

inline NodePtr literal(NodeKind kind, std::string text) {
  Node n;
  n.kind = kind;
  n.text = std::move(text);
  return std::make_shared<const Node>(std::move(n));
}

// Term shapes, compared through `t = 0`.
inline Grammar term_grammar() {
  auto id = [](const char* s) { return make_identifier(s); };
  return {{id("y"), literal(NodeKind::kNumeral, "0"),
           literal(NodeKind::kString, "s"), make_node(NodeKind::kEmptySet, {})},
          {[id](NodePtr a) {
             return make_node(NodeKind::kApply, {id("f"), std::move(a)});
           },
           [id](NodePtr a) {
             return make_node(NodeKind::kCall, {id("g"), std::move(a)});
           },
           [](NodePtr a) {
             return make_binder(NodeKind::kLambda, "y", make_type("Nat"),
                                std::move(a));
           },
           [](NodePtr a) {
             return make_node(NodeKind::kSingleton, {std::move(a)});
           },
           [](NodePtr a) { return make_node(NodeKind::kQuote, {std::move(a)}); }},
          {[id](NodePtr a, NodePtr b) {
             return make_node(NodeKind::kApply,
                              {id("h"), std::move(a), std::move(b)});
           },
           [id](NodePtr a, NodePtr b) {
             return make_node(NodeKind::kConditional,
                              {id("b"), std::move(a), std::move(b)});
           }}};
}

// Emits every formula of depth exactly by_depth.size() + 1, given all
// formulas of each smaller depth.
inline void next_layer(const Grammar& g,
                       const std::vector<std::vector<NodePtr>>& by_depth,
                       const std::function<void(NodePtr)>& emit) {
  std::vector<NodePtr> upto;
  for (const auto& layer : by_depth) {
    upto.insert(upto.end(), layer.begin(), layer.end());
  }
  const auto& prev = by_depth.back();
  std::size_t shallow = upto.size() - prev.size();
  for (const auto& op : g.unary) {
    for (const auto& a : prev) emit(op(a));
  }
  for (const auto& op : g.binary) {
    for (std::size_t i = 0; i < upto.size(); ++i) {
      for (std::size_t j = 0; j < upto.size(); ++j) {
        if (i < shallow && j < shallow) continue;
        emit(op(upto[i], upto[j]));
      }
    }
  }
}

// Calls `visit` on every formula of depth <= `depth`; the deepest layer is
// streamed rather than stored. Returns the count.
inline std::size_t for_each_formula(
    const Grammar& g, int depth,
    const std::function<void(const NodePtr&)>& visit) {
  if (depth < 1) return 0;
  std::vector<std::vector<NodePtr>> by_depth(1, g.leaves);
  for (int d = 2; d < depth; ++d) {
    std::vector<NodePtr> layer;
    next_layer(g, by_depth, [&](NodePtr f) { layer.push_back(std::move(f)); });
    by_depth.push_back(std::move(layer));
  }
  std::size_t count = 0;
  for (const auto& layer : by_depth) {
    for (const auto& f : layer) {
      visit(f);
      ++count;
    }
  }
  if (depth > 1) {
    next_layer(g, by_depth, [&](NodePtr f) {
      visit(f);
      ++count;
    });
  }
  return count;
}

// Every type of depth <= `depth` over the 7 base types and `extra` leaves,
// built with TermOf, Union, Pair, Proc and Fun.
inline std::vector<TypePtr> types_up_to(int depth,
                                        std::vector<TypePtr> extra = {}) {
  std::vector<TypePtr> all;
  for (BaseType b : kAllBaseTypes) all.push_back(base_type(b));
  all.insert(all.end(), extra.begin(), extra.end());
  std::size_t shallow = 0;
  for (int d = 2; d <= depth; ++d) {
    std::size_t n = all.size();
    for (std::size_t i = shallow; i < n; ++i) all.push_back(term_of(all[i]));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i < shallow && j < shallow) continue;
        all.push_back(union_type(all[i], all[j]));
        all.push_back(pair_type(all[i], all[j]));
        all.push_back(proc_type(all[i], all[j]));
        all.push_back(fun_type(all[i], all[j]));
      }
    }
    shallow = n;
  }
  return all;
}

// Random sentence of depth <= `depth` over `g`.
inline NodePtr random_formula(std::mt19937& rng, const Grammar& g, int depth) {
  std::uniform_int_distribution<std::size_t> pick_leaf(0, g.leaves.size() - 1);
  if (depth <= 1) return g.leaves[pick_leaf(rng)];
  std::size_t choices = 1 + g.unary.size() + g.binary.size();
  std::uniform_int_distribution<std::size_t> pick(0, choices - 1);
  std::size_t c = pick(rng);
  if (c == 0) return g.leaves[pick_leaf(rng)];
  if (c <= g.unary.size()) return g.unary[c - 1](random_formula(rng, g, depth - 1));
  const auto& op = g.binary[c - 1 - g.unary.size()];
  NodePtr a = random_formula(rng, g, depth - 1);
  return op(a, random_formula(rng, g, depth - 1));
}

}  // namespace dlk::testing

#endif  // DLK_TESTS_SUPPORT_GENERATORS_H_
