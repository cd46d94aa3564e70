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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dlk/abstraction.h"
#include "dlk/deduction.h"
#include "dlk/driver.h"
#include "dlk/theories.h"
#include "dlk/typecheck.h"

namespace dlk {
namespace {

Diagnostic error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const KernelError& e) {
    return e.diagnostic();
  }
  return {};
}

struct Counts {
  std::size_t axioms;
  std::size_t constants;
  std::size_t definitions;
  friend bool operator==(const Counts&, const Counts&) = default;
};

Counts counts(const TheoryEnv& env) {
  return {env.axioms().size(), env.constants().size(),
          env.definitions().size()};
}

std::set<std::string> axiom_names(const TheoryEnv& env) {
  std::set<std::string> out;
  for (const auto& a : env.axioms()) out.insert(a.name);
  return out;
}

TEST(LoadTheory, Mathematics) {
  TheoryEnv env = load_theory({});
  EXPECT_EQ(env.name, "Mathematics");
  EXPECT_EQ(counts(env), (Counts{0, 0, 1}));
  const DefinitionInfo* c = env.definition("Consistent");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(render(*c->body), "not exists [P: Proposition] -> |- (P /\\ not P)");
  EXPECT_EQ(render(*c->type), "Proposition");
}

TEST(LoadTheory, Nat) {
  TheoryEnv env = load_theory({"nat"});
  EXPECT_EQ(env.axioms().size(), 5u);
  EXPECT_EQ(env.constants().size(), 2u);
  EXPECT_EQ(render(*env.constant("0")->type), "Nat");
  EXPECT_EQ(render(*env.constant("Successor")->type), "Fun(Nat, Nat)");
  ASSERT_NE(env.axiom("successor_nonzero"), nullptr);
  EXPECT_EQ(render(*env.axiom("successor_nonzero")->statement.formula),
            "forall [i: Nat] -> Successor[i] != 0");
  EXPECT_EQ(render(*env.axiom("induction")->statement.formula),
            "forall [P: Fun(Nat, Bool)] -> Inductive[P] <=> forall [i: Nat] -> "
            "P[i]");
}

TEST(LoadTheory, NatAndSets) {
  TheoryEnv env = load_theory({"nat", "sets"});
  const AxiomInfo* e = env.axiom("empty_subset");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(render(*e->statement.formula), "forall [s: Set(Nat)] -> {} subset s");
  TypingContext ctx(env);
  EXPECT_EQ(render(*ctx.zonk(infer_term(ctx, *parse_formula("{0}")))),
            "Set(Nat)");
  EXPECT_NO_THROW(check_sentence(ctx, *parse_formula("{} : Set(Nat)")));
}

TEST(LoadTheory, PackCounts) {
  EXPECT_EQ(counts(load_theory({"nat"})), (Counts{5, 2, 2}));
  EXPECT_EQ(counts(load_theory({"sets"})), (Counts{17, 5, 2}));
  EXPECT_EQ(counts(load_theory({"reals"})), (Counts{1, 5, 5}));
  EXPECT_EQ(counts(load_theory({"nat", "sets", "reals"})), (Counts{23, 12, 7}));
}

TEST(LoadTheory, Idempotent) {
  TheoryEnv once = load_theory({"nat", "sets"});
  TheoryEnv twice = load_pack(load_pack(once, "nat"), "sets");
  EXPECT_EQ(counts(once), counts(twice));
  EXPECT_EQ(counts(load_theory({"nat", "nat"})), counts(load_theory({"nat"})));
}

TEST(LoadTheory, OrderIndependent) {
  std::vector<std::string> packs = known_packs();
  ASSERT_EQ(packs.size(), 3u);
  std::sort(packs.begin(), packs.end());
  TheoryEnv first = load_theory(packs);
  while (std::next_permutation(packs.begin(), packs.end())) {
    TheoryEnv env = load_theory(packs);
    EXPECT_EQ(counts(env), counts(first));
    EXPECT_EQ(axiom_names(env), axiom_names(first));
  }
}

TEST(LoadTheory, UnknownPack) {
  EXPECT_EQ(error_of([] { load_theory({"topology"}); }).code, "E010");
}

TEST(LoadTheory, SetFunctionOrders) {
  TheoryEnv env = load_theory({"sets"});
  for (const char* alias :
       {"SetFunctionsOfOrder1", "SetFunctionsOfOrder2", "SetFunctionsOfOrder3"}) {
    EXPECT_NE(env.type_alias(alias), nullptr) << alias;
  }
  EXPECT_EQ(env.type_alias("SetFunctionsOfOrder4"), nullptr);
}

// Every shipped axiom re-checks and abstracts in the combined theory, and
// each pack's text parses on its own.
TEST(PackHygiene, EveryAxiomChecksAndAbstracts) {
  TheoryEnv env = load_theory({"nat", "sets", "reals"});
  for (const AxiomInfo& a : env.axioms()) {
    TypingContext ctx(env);
    EXPECT_NO_THROW({
      check_sentence(ctx, *a.statement.formula);
      require_holes_solved(ctx);
      abstract_sentence(env, a.statement.formula);
    }) << a.name;
    EXPECT_FALSE(a.origin.empty()) << a.name;
  }
  for (const auto& id : known_packs()) {
    SourceFile f = parse_file(pack_source(id), id);
    EXPECT_FALSE(f.declarations.empty()) << id;
    for (const Declaration& d : f.declarations) {
      if (d.kind != DeclKind::kAxiom) continue;
      EXPECT_NE(env.axiom(d.name), nullptr) << d.name;
      EXPECT_TRUE(
          structurally_equal(*env.axiom(d.name)->statement.formula, *d.body));
    }
  }
}

TEST(PackHygiene, ConstantNamespacesAreDisjoint) {
  std::set<std::string> seen;
  for (const auto& id : known_packs()) {
    TheoryEnv env = load_theory({id});
    for (const auto& [name, info] : env.constants()) {
      if (info.origin != id) continue;
      EXPECT_TRUE(seen.insert(name).second) << name << " in " << id;
    }
  }
}

TEST(AddDefinition, Examples) {
  TheoryEnv env = load_theory({"nat"});
  TheoryEnv more = add_definition(
      env, "Consistent2", {},
      parse_formula("not exists [P: Proposition] -> (|- (P /\\ not P))"));
  EXPECT_NE(more.definition("Consistent2"), nullptr);
  EXPECT_EQ(env.definition("Consistent2"), nullptr);

  TheoryEnv ind = add_definition(
      env, "Inductive2", {{"P", make_type("Fun", {make_type("Nat"), make_type("Bool")}), {}}},
      parse_formula("P[0] /\\ forall [i: Nat] -> P[i] => P[Successor[i]]"));
  EXPECT_EQ(render(*ind.definition("Inductive2")->type), "Fun(Fun(Nat, Bool), Bool)");

  EXPECT_EQ(error_of([&] {
              add_definition(env, "X", {}, parse_formula("X /\\ X"));
            }).code,
            "E035");
  EXPECT_EQ(error_of([&] {
              add_definition(env, "Consistent", {}, parse_formula("0 = 0"));
            }).code,
            "E034");
  EXPECT_EQ(error_of([&] {
              add_definition(env, "Successor", {}, parse_formula("0 = 0"));
            }).code,
            "E034");
  EXPECT_EQ(error_of([&] {
              add_definition(env, "Y", {}, parse_formula("Z /\\ Z"));
            }).code,
            "E010");
}

TEST(Induction, InstanceVerifies) {
  std::ifstream in(std::string(DLK_CORPUS_DIR) + "/induction.dlp");
  std::stringstream ss;
  ss << in.rdbuf();
  CheckReport r = check_source(ss.str(), "induction.dlp");
  ASSERT_TRUE(r.ok()) << format_diagnostic(r.diagnostics[0], r.path);
  const TheoremInfo* t = r.env.theorem("InductionInstance");
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(render(*t->statement.formula),
            "Inductive[[i: Nat] -> i = i] => forall [i: Nat] -> ([i: Nat] -> "
            "i = i)[i]");
}

// Nested definitions unfolded one name at a time, in every order, all end
// at the same fully unfolded statement; each path is checked by the kernel.
TEST(Unfolding, Confluent) {
  const std::vector<std::pair<std::string, std::string>> defs{
      {"C", "0 = 0"},
      {"B", "C \\/ not C"},
      {"A", "B /\\ C"},
      {"D", "A => (B <=> C)"},
  };
  TheoryEnv env = load_theory({"nat"});
  for (const auto& [name, body] : defs) {
    env = add_definition(env, name, {}, parse_formula(body));
  }
  env = add_axiom(env, "d", parse_formula("D"));

  std::vector<std::string> order{"A", "B", "C", "D"};
  std::set<std::string> normal_forms;
  int paths = 0;
  do {
    NodePtr current = parse_formula("D");
    std::string steps = "  1. have D by axiom with d\n";
    int n = 1;
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& name : order) {
        if (!mentions(*current, name)) continue;
        current = substitute(current, name, env.definition(name)->body);
        ++n;
        steps += "  " + std::to_string(n) + ". have " + render(*current) +
                 " by unfold_def(" + std::to_string(n - 1) + ") with " + name +
                 "\n";
        progress = true;
        break;
      }
    }
    std::string goal = render(*current);
    std::string text = "proof Unfolded : " + goal + "\n" + steps;
    text.replace(text.rfind("have"), 4, "conclude");
    SourceFile f = parse_file(text);
    const Declaration& decl = f.declarations.at(0);
    EXPECT_NO_THROW(check_derivation(
        env, {decl.name, env.name, decl.body, decl.steps, decl.span}))
        << text;
    normal_forms.insert(goal);
    ++paths;
  } while (std::next_permutation(order.begin(), order.end()));
  EXPECT_EQ(paths, 24);
  EXPECT_EQ(normal_forms.size(), 1u);
  EXPECT_EQ(*normal_forms.begin(),
            "(0 = 0 \\/ not 0 = 0) /\\ 0 = 0 => (0 = 0 \\/ not 0 = 0 <=> 0 = 0)");
}

TEST(Unfolding, FoldsBack) {
  CheckReport r = check_source(
      "theory nat\n"
      "def Z := 0 = 0\n"
      "proof FoldZ : Z\n"
      "  1. have 0 = 0 by eq_refl with 0\n"
      "  2. conclude Z by unfold_def(1) with Z\n",
      "fold");
  EXPECT_TRUE(r.ok()) << format_diagnostic(r.diagnostics.at(0), r.path);
}

}  // namespace
}  // namespace dlk
