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

#include "dlk/driver.h"

#include <fmt/format.h>

#include <utility>

#include "dlk/abstraction.h"
#include "dlk/deduction.h"
#include "dlk/theories.h"
#include "dlk/typecheck.h"

namespace dlk {

namespace {

class FileChecker {
 public:
  explicit FileChecker(const CheckOptions& options) : options_(options) {}

  // Returns false if the declaration produced a diagnostic.
  bool run(const Declaration& d, TheoryEnv& env,
           std::vector<Diagnostic>& sink, std::vector<std::string>& messages) {
    try {
      TheoryEnv next = env;
      step(d, next, messages);
      env = std::move(next);
      return true;
    } catch (const KernelError& e) {
      sink.push_back(e.diagnostic());
      return false;
    }
  }

 private:
  void step(const Declaration& d, TheoryEnv& env,
            std::vector<std::string>& messages) {
    switch (d.kind) {
      case DeclKind::kTheoryImport:
        for (const auto& id : d.packs) env = load_pack(std::move(env), id);
        return;
      case DeclKind::kEval: {
        EvalResult r = evaluate(env, d.body, EvalBudget{options_.fuel});
        messages.push_back(
            fmt::format("Value: {} : {}", render(*r.value), render(*r.type)));
        return;
      }
      case DeclKind::kProof: {
        Derivation derivation{d.name, env.name, d.body, d.steps, d.span};
        env = register_theorem(std::move(env), d.name, derivation);
        messages.push_back(fmt::format("Verified: {}", d.name));
        return;
      }
      case DeclKind::kExpectFailure:
        return expect_failure(d, env, messages);
      default:
        env = declare(std::move(env), d);
        return;
    }
  }

  void expect_failure(const Declaration& d, const TheoryEnv& env,
                      std::vector<std::string>& messages) {
    TheoryEnv scratch = env;
    std::vector<Diagnostic> inner;
    std::vector<std::string> ignored;
    for (const auto& decl : d.inner) run(decl, scratch, inner, ignored);
    for (const auto& diag : inner) {
      if (diag.code == d.expected_code) {
        messages.push_back(
            fmt::format("Rejected as expected: {} {}", diag.code,
                        diag.message));
        return;
      }
    }
    std::vector<std::string> notes;
    for (const auto& diag : inner) {
      notes.push_back(fmt::format("got {}: {}", diag.code, diag.message));
    }
    if (inner.empty()) notes.push_back("every declaration in the block passed");
    fail(codes::kExpectationUnmet, d.span,
         fmt::format("expected the block to fail with {}", d.expected_code),
         std::move(notes));
  }

  const CheckOptions& options_;
};

}  // namespace

TheoryEnv admit_axioms(TheoryEnv env, const std::vector<std::string>& raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    NodePtr statement = parse_formula(raw[i]);
    for (const auto& name : free_identifiers(*statement)) {
      if (!is_global_name(env, name)) {
        env.add_constant(ConstantInfo{
            name, base_type(BaseType::kProposition), "admitted"});
      }
    }
    std::string name = i == 0 ? "admitted" : fmt::format("admitted_{}", i + 1);
    TypingContext ctx(env);
    check_sentence(ctx, *statement);
    require_holes_solved(ctx);
    env.add_axiom(AxiomInfo{name, abstract_sentence(env, statement),
                            "admitted"});
  }
  return env;
}

CheckReport check_source(std::string_view text, const std::string& path,
                         const CheckOptions& options) {
  CheckReport report;
  report.path = path;
  SourceFile file;
  try {
    file = parse_file(text, path);
    report.env = load_theory(options.packs);
    report.env = admit_axioms(std::move(report.env), options.admitted);
  } catch (const KernelError& e) {
    report.diagnostics.push_back(e.diagnostic());
    return report;
  }
  FileChecker checker(options);
  for (const auto& d : file.declarations) {
    checker.run(d, report.env, report.diagnostics, report.messages);
  }
  return report;
}

}  // namespace dlk
