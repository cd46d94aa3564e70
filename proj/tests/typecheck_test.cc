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

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dlk/syntax.h"
#include "dlk/theories.h"
#include "dlk/typecheck.h"
#include "dlk/types.h"
#include "support/generators.h"

namespace dlk {
namespace {

TypePtr nat() { return base_type(BaseType::kNat); }
TypePtr boolean() { return base_type(BaseType::kBoolean); }
TypePtr prop() { return base_type(BaseType::kProposition); }

Diagnostic error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const KernelError& e) {
    return e.diagnostic();
  }
  return {};
}

TheoryEnv with_constants(
    std::vector<std::string> packs,
    const std::vector<std::pair<std::string, std::string>>& consts) {
  TheoryEnv env = load_theory(packs);
  for (const auto& [name, type] : consts) {
    env = add_constant(env, name, parse_type(type));
  }
  return env;
}

std::string term_type(const TheoryEnv& env, const std::string& text) {
  TypingContext ctx(env);
  return render(*ctx.zonk(infer_term(ctx, *parse_formula(text))));
}

std::string expression_type(const TheoryEnv& env, const std::string& text) {
  TypingContext ctx(env);
  return render(*ctx.zonk(infer_expression(ctx, *parse_formula(text))));
}

void sentence_ok(const TheoryEnv& env, const std::string& text) {
  TypingContext ctx(env);
  check_sentence(ctx, *parse_formula(text));
  require_holes_solved(ctx);
}

std::string sentence_code(const TheoryEnv& env, const std::string& text) {
  return error_of([&] { sentence_ok(env, text); }).code;
}

TEST(WfType, Examples) {
  EXPECT_NO_THROW(wf_type(fun_type(nat(), boolean())));
  EXPECT_NO_THROW(wf_type(term_of(prop())));
  EXPECT_EQ(error_of([] { wf_type(meta_type(0)); }).code, "E022");
  EXPECT_EQ(error_of([] { wf_type(pair_type(nat(), meta_type(3))); }).code,
            "E022");
}

TEST(Unify, BindsMeta) {
  Substitution s = unify(meta_type(0), nat(), {});
  ASSERT_EQ(s.bindings().size(), 1u);
  EXPECT_TRUE(type_equal(*s.apply(meta_type(0)), *nat()));
}

TEST(Unify, OccursCheck) {
  Diagnostic d = error_of(
      [] { unify(meta_type(0), proc_type(meta_type(0), prop()), {}); });
  EXPECT_EQ(d.code, "E021");
}

TEST(Unify, MismatchNamesCodomain) {
  Diagnostic d = error_of([] {
    unify(proc_type(nat(), nat()), proc_type(nat(), boolean()), {});
  });
  EXPECT_EQ(d.code, "E020");
  ASSERT_FALSE(d.notes.empty());
  EXPECT_EQ(d.notes[0], "at codomain");
}

TEST(Unify, NoCommutativeUnion) {
  EXPECT_EQ(error_of([] {
              unify(union_type(nat(), boolean()), union_type(boolean(), nat()),
                    {});
            }).code,
            "E020");
}

TEST(Unify, OccursCheckOverAllContexts) {
  TypePtr alpha = meta_type(0);
  std::vector<TypePtr> all = testing::types_up_to(3, {alpha});
  std::size_t contexts = 0;
  std::size_t closed = 0;
  for (const TypePtr& f : all) {
    if (f == alpha) continue;
    if (metas_of(*f).empty()) {
      ++closed;
      Substitution s = unify(alpha, f, {});
      EXPECT_TRUE(type_equal(*s.apply(alpha), *f));
      continue;
    }
    ++contexts;
    std::string code = error_of([&] { unify(alpha, f, {}); }).code;
    ASSERT_EQ(code, "E021") << render(*f);
    ASSERT_EQ(error_of([&] { unify(f, alpha, {}); }).code, "E021");
  }
  EXPECT_GT(contexts, 1000u);
  EXPECT_GT(closed, 0u);
}

// Size counts type nodes.
std::vector<std::vector<TypePtr>> types_by_size(int max) {
  std::vector<std::vector<TypePtr>> by(max + 1);
  for (BaseType b : kAllBaseTypes) by[1].push_back(base_type(b));
  for (int n = 2; n <= max; ++n) {
    for (const auto& t : by[n - 1]) by[n].push_back(term_of(t));
    for (int a = 1; a + 1 < n; ++a) {
      for (const auto& l : by[a]) {
        for (const auto& r : by[n - 1 - a]) {
          by[n].push_back(union_type(l, r));
          by[n].push_back(pair_type(l, r));
          by[n].push_back(proc_type(l, r));
          by[n].push_back(fun_type(l, r));
        }
      }
    }
  }
  return by;
}

bool equals_strict_subterm(const Type& whole, const Type& t) {
  for (const auto& a : t.args) {
    if (type_equal(whole, *a) || equals_strict_subterm(whole, *a)) return true;
  }
  return false;
}

TEST(Types, NoTypeContainsItself) {
  auto by = types_by_size(6);
  std::size_t total = 0;
  for (const auto& layer : by) {
    for (const auto& t : layer) {
      ++total;
      ASSERT_FALSE(equals_strict_subterm(*t, *t)) << render(*t);
    }
  }
  EXPECT_EQ(total, 7u + 7u + 203u + 595u + 12159u + 56847u);
}

TEST(Types, SurfaceSpellingRoundTrips) {
  TheoryEnv env = load_theory({});
  auto by = types_by_size(5);
  for (const auto& layer : by) {
    for (const auto& t : layer) {
      TypingContext ctx(env);
      TypePtr back = resolve_type(ctx, parse_type(render(*t)));
      ASSERT_TRUE(type_equal(*back, *t)) << render(*t);
      ASSERT_NO_THROW(wf_type(back));
    }
  }
}

TypePtr random_type(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 1 : 6);
  switch (pick(rng)) {
    case 0:
      return meta_type(std::uniform_int_distribution<int>(0, 3)(rng));
    case 1:
      return base_type(kAllBaseTypes[std::uniform_int_distribution<int>(0, 2)(rng)]);
    case 2:
      return term_of(random_type(rng, depth - 1));
    case 3:
      return union_type(random_type(rng, depth - 1), random_type(rng, depth - 1));
    case 4:
      return pair_type(random_type(rng, depth - 1), random_type(rng, depth - 1));
    case 5:
      return proc_type(random_type(rng, depth - 1), random_type(rng, depth - 1));
    default:
      return fun_type(random_type(rng, depth - 1), random_type(rng, depth - 1));
  }
}

TEST(Unify, SubstitutionsAreIdempotentAndUnifying) {
  std::mt19937 rng(1234);
  int solved = 0;
  for (int i = 0; i < 20000; ++i) {
    TypePtr a = random_type(rng, 4);
    TypePtr b = random_type(rng, 4);
    Substitution s;
    try {
      s = unify(a, b, {});
    } catch (const KernelError& e) {
      ASSERT_TRUE(e.code() == "E020" || e.code() == "E021") << e.code();
      continue;
    }
    ++solved;
    ASSERT_TRUE(type_equal(*s.apply(a), *s.apply(b)));
    for (const TypePtr& t : {a, b, random_type(rng, 3)}) {
      ASSERT_TRUE(type_equal(*s.apply(s.apply(t)), *s.apply(t)));
    }
    for (const auto& [meta, value] : s.bindings()) {
      ASSERT_FALSE(metas_of(*value).count(meta));
    }
  }
  EXPECT_GT(solved, 100);
}

TEST(Unify, ExtendsGivenSubstitution) {
  Substitution s = unify(meta_type(0), nat(), {});
  s = unify(meta_type(1), fun_type(meta_type(0), meta_type(2)), s);
  EXPECT_EQ(render(*s.apply(meta_type(1))), "Fun(Nat, ?2)");
  EXPECT_TRUE(type_equal(*s.apply(meta_type(0)), *nat()));
}

TEST(Context, InnerBindingsShadow) {
  TheoryEnv env = load_theory({});
  TypingContext ctx(env);
  ctx.push("x", nat());
  ctx.push("x", boolean());
  EXPECT_TRUE(type_equal(*ctx.lookup("x")->type, *boolean()));
  ctx.pop();
  EXPECT_TRUE(type_equal(*ctx.lookup("x")->type, *nat()));
  ctx.pop();
  EXPECT_EQ(ctx.lookup("x"), nullptr);
}

TEST(InferTerm, Examples) {
  TheoryEnv env = load_theory({"nat"});
  EXPECT_EQ(term_type(env, "[x: Nat] -> x"), "Fun(Nat, Nat)");
  EXPECT_EQ(term_type(env, "Successor[0]"), "Nat");
  EXPECT_EQ(term_type(env, "(True ? 0 : Successor[0])"), "Nat");
  EXPECT_EQ(term_type(env, "quote(0)"), "Term(Nat)");
  EXPECT_EQ(term_type(env, "([x: Nat] -> x)[0]"), "Nat");
}

TEST(InferTerm, Errors) {
  TheoryEnv env = load_theory({"nat"});
  EXPECT_EQ(error_of([&] { term_type(env, "nowhere"); }).code, "E010");
  EXPECT_EQ(error_of([&] { term_type(env, "Successor[True]"); }).code, "E020");
  EXPECT_EQ(error_of([&] { term_type(env, "(0 ? 0 : 0)"); }).code, "E020");
  EXPECT_EQ(error_of([&] { term_type(env, "(True ? 0 : False)"); }).code,
            "E020");
}

TEST(InferTerm, CurryHelperIsRejected) {
  TheoryEnv env = with_constants({}, {{"f", "Fun(Proposition, Proposition)"}});
  Diagnostic d = error_of([&] { term_type(env, "[x: ?h] -> f[x[x]]"); });
  EXPECT_EQ(d.code, "E021");
}

// The self-application template `[x: ?h] -> f[x[x]]` for every head type of
// f built from base types and depth-2 types, in function and procedure form.
TEST(InferTerm, FixTemplateHasNoInstance) {
  std::vector<TypePtr> domains = testing::types_up_to(2);
  std::size_t cases = 0;
  for (BaseType b : kAllBaseTypes) {
    for (const TypePtr& d : domains) {
      for (const char* text :
           {"[x: ?h] -> f[x[x]]", "[x: ?h] -> f[x.[x]]"}) {
        TheoryEnv env = load_theory({});
        env.add_constant({"f", fun_type(d, base_type(b)), ""});
        TypingContext ctx(env);
        std::string code = error_of([&] {
                             infer_term(ctx, *parse_formula(text));
                           }).code;
        ASSERT_EQ(code, "E021") << render(*d) << " " << text;
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 7u * domains.size() * 2u);
}

// With the hole replaced by any concrete type, x[x] is a plain mismatch.
TEST(InferTerm, ConcreteSelfApplicationIsIllTyped) {
  TheoryEnv env = with_constants({}, {{"f", "Fun(Proposition, Proposition)"}});
  for (const TypePtr& t : testing::types_up_to(2)) {
    std::string text = "[x: " + render(*t) + "] -> f[x[x]]";
    std::string code = error_of([&] { term_type(env, text); }).code;
    ASSERT_EQ(code, "E020") << text;
  }
}

TEST(InferTerm, Principal) {
  TheoryEnv env = with_constants(
      {}, {{"y", "Nat"}, {"f", "Fun(Nat, Nat)"}, {"g", "Proc(Nat, Nat)"},
           {"h", "Fun(Pair(Nat, Nat), Nat)"}, {"b", "Bool"}});
  std::size_t typed = 0;
  std::size_t total = testing::for_each_formula(
      testing::term_grammar(), 3, [&](const NodePtr& t) {
        std::string first;
        try {
          TypingContext ctx(env);
          first = render(*ctx.zonk(infer_term(ctx, *t)));
        } catch (const KernelError&) {
          return;
        }
        ++typed;
        TypingContext again(env);
        ASSERT_EQ(render(*again.zonk(infer_term(again, *t))), first)
            << render(*t);
      });
  EXPECT_GT(typed, 100u);
  EXPECT_GT(total, typed);
}

TEST(InferExpression, Examples) {
  TheoryEnv env = load_theory({"nat"});
  EXPECT_EQ(expression_type(env, "Let {v := 0}, v"), "Nat");
  EXPECT_EQ(expression_type(env, "[x: Nat] -> x"), "Proc(Nat, Nat)");
  std::string loop =
      expression_type(env, "Let {loop := [x: Nat] -> loop.[x]}, loop");
  EXPECT_EQ(loop.rfind("Proc(Nat, ?", 0), 0u) << loop;
}

TEST(InferTerm, LetIsNotATerm) {
  TheoryEnv env = load_theory({});
  EXPECT_EQ(error_of([&] { term_type(env, "Let {v := 0}, v"); }).code,
            "E020");
}

TEST(CheckSentence, Examples) {
  TheoryEnv env = load_theory({});
  EXPECT_NO_THROW(
      sentence_ok(env, "forall [n: Nat] -> exists [m: Nat] -> m > n"));
  TheoryEnv gt = with_constants({}, {{"gt", "Fun(Pair(Nat, Nat), Bool)"}});
  EXPECT_NO_THROW(sentence_ok(gt, "forall [n: Nat] -> exists [m: Nat] -> m > n"));
  EXPECT_NO_THROW(sentence_ok(gt, "forall [n: Nat] -> gt[n, n] => gt[n, n]"));
  TheoryEnv p = with_constants({}, {{"P", "Proposition"}});
  EXPECT_NO_THROW(sentence_ok(p, "P /\\ not P"));
  EXPECT_NO_THROW(sentence_ok(p, "P, P |- P /\\ P"));
  EXPECT_NO_THROW(sentence_ok(p, "forall [Q: Proposition] -> Q \\/ not Q"));
}

TEST(CheckSentence, OrderOnReals) {
  TheoryEnv env = load_theory({"reals"});
  EXPECT_NO_THROW(sentence_ok(env, "forall [x: R] -> exists [y: R] -> x < y"));
}

TEST(CheckSentence, BerryPredicateHasNoStrictType) {
  TheoryEnv env = load_theory({});
  EXPECT_EQ(sentence_code(env,
                          "forall [s: String] -> forall [k: Nat] -> "
                          "forall [x: Nat] -> abstract(s)[x] <=> x = k"),
            "E023");
}

TEST(CheckSentence, Errors) {
  TheoryEnv env = with_constants({}, {{"P", "Proposition"}, {"n", "Nat"}});
  EXPECT_EQ(sentence_code(env, "Q /\\ P"), "E010");
  EXPECT_EQ(sentence_code(env, "n /\\ P"), "E020");
  EXPECT_EQ(sentence_code(env, "n = P"), "E020");
  EXPECT_EQ(sentence_code(env, "forall [x: ?h] -> P"), "E022");
}

TEST(CheckSentence, HolesSolvedByUse) {
  TheoryEnv env = load_theory({});
  EXPECT_NO_THROW(sentence_ok(env, "forall [x: ?h] -> x = 0"));
}

}  // namespace
}  // namespace dlk
