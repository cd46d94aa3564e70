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

#include <fmt/format.h>

#include <utility>

#include "dlk/syntax.h"

namespace dlk {

namespace {

// Rendering context for one position in the tree.
struct Ctx {
  int prec = 0;              // minimum precedence accepted without parens
  bool closed_right = true;  // nothing that a trailing body could absorb follows
  bool no_colon = false;     // inside a conditional's then-branch
};

constexpr int kTurnstilePrec = 0;
constexpr int kIffPrec = 1;
constexpr int kImpliesPrec = 2;
constexpr int kOrPrec = 3;
constexpr int kAndPrec = 4;
constexpr int kUnaryPrec = 5;
constexpr int kRelationPrec = 6;
constexpr int kPostfixPrec = 7;
constexpr int kPrimaryPrec = 8;

int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::kTurnstile:
    case NodeKind::kProofTurnstile:
      return kTurnstilePrec;
    case NodeKind::kIff:
      return kIffPrec;
    case NodeKind::kImplies:
      return kImpliesPrec;
    case NodeKind::kOr:
      return kOrPrec;
    case NodeKind::kAnd:
      return kAndPrec;
    case NodeKind::kNot:
    case NodeKind::kForall:
    case NodeKind::kExists:
      return kUnaryPrec;
    case NodeKind::kRelation:
    case NodeKind::kJudgment:
      return kRelationPrec;
    case NodeKind::kApply:
    case NodeKind::kCall:
      return kPostfixPrec;
    default:
      return kPrimaryPrec;
  }
}

// True if the rightmost token of `n` is the end of an open-ended body.
bool right_open(const Node& n) {
  switch (n.kind) {
    case NodeKind::kForall:
    case NodeKind::kExists:
    case NodeKind::kLambda:
    case NodeKind::kLet:
      return true;
    case NodeKind::kNot:
      return right_open(*n.children[0]);
    default:
      return false;
  }
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string go(const Node& n, Ctx ctx);

std::string joined(const std::vector<NodePtr>& nodes, std::size_t from,
                   std::size_t to, Ctx ctx) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ", ";
    out += go(*nodes[i], ctx);
  }
  return out;
}

std::string binder_body(const Node& body, Ctx ctx) {
  if (body.kind == NodeKind::kTurnstile && body.antecedents == 0 &&
      body.children.size() == 1) {
    return go(body, Ctx{kTurnstilePrec, ctx.closed_right, ctx.no_colon});
  }
  return go(body, Ctx{kIffPrec, ctx.closed_right, ctx.no_colon});
}

std::string unparenthesized(const Node& n, Ctx ctx) {
  const Ctx closed{kIffPrec, true, false};
  auto binary = [&](std::string_view op, int lp, int rp) {
    return fmt::format("{} {} {}",
                       go(*n.children[0], Ctx{lp, false, ctx.no_colon}), op,
                       go(*n.children[1], Ctx{rp, ctx.closed_right,
                                                ctx.no_colon}));
  };
  switch (n.kind) {
    case NodeKind::kIdentifier:
    case NodeKind::kNumeral:
    case NodeKind::kBoolean:
      return n.text;
    case NodeKind::kString:
      return quote_string(n.text);
    case NodeKind::kOpaque:
      return fmt::format("#opaque({})", n.text);
    case NodeKind::kNot:
      return "not " + go(*n.children[0], Ctx{kUnaryPrec, ctx.closed_right,
                                             ctx.no_colon});
    case NodeKind::kAnd:
      return binary("/\\", kAndPrec, kUnaryPrec);
    case NodeKind::kOr:
      return binary("\\/", kOrPrec, kAndPrec);
    case NodeKind::kImplies:
      return binary("=>", kOrPrec, kImpliesPrec);
    case NodeKind::kIff:
      return binary("<=>", kIffPrec, kImpliesPrec);
    case NodeKind::kRelation:
      return fmt::format(
          "{} {} {}", go(*n.children[0], Ctx{kPostfixPrec, false, false}),
          n.text, go(*n.children[1], Ctx{kPostfixPrec, false, false}));
    case NodeKind::kJudgment:
      return fmt::format("{} : {}",
                         go(*n.children[0], Ctx{kPostfixPrec, false, false}),
                         render(*n.type));
    case NodeKind::kTurnstile: {
      // Compound operands get parentheses for readability.
      Ctx item{kUnaryPrec, true, ctx.no_colon};
      std::string lhs = joined(n.children, 0, n.antecedents, item);
      std::string rhs =
          joined(n.children, n.antecedents, n.children.size(), item);
      if (lhs.empty()) return "|- " + rhs;
      if (rhs.empty()) return lhs + " |-";
      return lhs + " |- " + rhs;
    }
    case NodeKind::kProofTurnstile:
      return fmt::format(
          "|-^{} {}", go(*n.children[0], Ctx{kPostfixPrec, false, false}),
          go(*n.children[1], Ctx{kUnaryPrec, ctx.closed_right, ctx.no_colon}));
    case NodeKind::kForall:
    case NodeKind::kExists:
      return fmt::format("{} [{}: {}] -> {}",
                         n.kind == NodeKind::kForall ? "forall" : "exists",
                         n.text, render(*n.type),
                         binder_body(*n.children[0], ctx));
    case NodeKind::kLambda:
      return fmt::format("[{}: {}] -> {}", n.text, render(*n.type),
                         binder_body(*n.children[0], ctx));
    case NodeKind::kApply:
    case NodeKind::kCall:
      return fmt::format("{}{}{}]",
                         go(*n.children[0], Ctx{kPostfixPrec, false, false}),
                         n.kind == NodeKind::kApply ? "[" : ".[",
                         joined(n.children, 1, n.children.size(), closed));
    case NodeKind::kConditional:
      return fmt::format("({} ? {} : {})",
                         go(*n.children[0], Ctx{kTurnstilePrec, true, false}),
                         go(*n.children[1], Ctx{kIffPrec, true, true}),
                         go(*n.children[2], closed));
    case NodeKind::kQuote:
      return fmt::format("quote({})",
                         go(*n.children[0], Ctx{kTurnstilePrec, true, false}));
    case NodeKind::kAbstract:
      return fmt::format("abstract({})",
                         go(*n.children[0], Ctx{kTurnstilePrec, true, false}));
    case NodeKind::kLet: {
      std::string out = "Let {";
      for (std::size_t i = 0; i < n.names.size(); ++i) {
        if (i > 0) out += ", ";
        out += fmt::format("{} := {}", n.names[i], go(*n.children[i], closed));
      }
      out += "}, ";
      out += binder_body(*n.children.back(), ctx);
      return out;
    }
    case NodeKind::kEmptySet:
      return "{}";
    case NodeKind::kSingleton:
      return fmt::format("{{{}}}", go(*n.children[0], closed));
  }
  return "";
}

std::string go(const Node& n, Ctx ctx) {
  bool parens = precedence(n) < ctx.prec ||
                (!ctx.closed_right && right_open(n)) ||
                (ctx.no_colon && n.kind == NodeKind::kJudgment);
  if (n.kind == NodeKind::kTurnstile && ctx.prec == kTurnstilePrec &&
      n.antecedents == 0 && n.children.empty()) {
    parens = false;
  }
  if (parens) {
    return "(" + unparenthesized(n, Ctx{kTurnstilePrec, true, false}) + ")";
  }
  return unparenthesized(n, ctx);
}

void render_steps(const std::vector<ProofStep>& steps, std::string& out) {
  for (const ProofStep& s : steps) {
    out += fmt::format("\n{:>4}. {}{}", s.number, std::string(2 * s.depth, ' '),
                       keyword_name(s.keyword));
    if (s.keyword == StepKeyword::kFix) {
      out += fmt::format(" {} : {}", s.fix_name, render(*s.fix_type));
      continue;
    }
    out += " " + render(*s.formula);
    if (s.keyword == StepKeyword::kAssume) continue;
    out += " by " + s.rule;
    if (!s.refs.empty()) out += fmt::format("({})", fmt::join(s.refs, ", "));
    if (s.payload) {
      out += " with " + go(*s.payload, Ctx{kIffPrec, true, false});
    }
  }
}

std::string params(const std::vector<Param>& ps) {
  if (ps.empty()) return "";
  std::string out = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt::format("{}: {}", ps[i].name, render(ps[i].type));
  }
  return out + "]";
}

}  // namespace

std::string render(const Node& node) {
  return go(node, Ctx{kTurnstilePrec, true, false});
}

std::string render(const TypeSyntax& type) {
  if (type.hole) return "?" + type.name;
  if (type.args.empty()) return type.name;
  std::string out = type.name + "(";
  for (std::size_t i = 0; i < type.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += render(type.args[i]);
  }
  return out + ")";
}

std::string render(const Declaration& d) {
  switch (d.kind) {
    case DeclKind::kTheoryImport:
      return fmt::format("theory {}", fmt::join(d.packs, ", "));
    case DeclKind::kConstant:
      return fmt::format("const {} : {}", d.name, render(*d.type));
    case DeclKind::kTypeAlias:
      return fmt::format("type {} := {}", d.name, render(*d.type));
    case DeclKind::kAxiom:
      return fmt::format("axiom {} : {}", d.name, render(*d.body));
    case DeclKind::kDefinition:
    case DeclKind::kProcedure:
      return fmt::format("{} {}{} := {}",
                         d.kind == DeclKind::kDefinition ? "def" : "proc",
                         d.name, params(d.params), render(*d.body));
    case DeclKind::kEval:
      return "eval " + render(*d.body);
    case DeclKind::kProof: {
      std::string out = fmt::format("proof {} : {}", d.name, render(*d.body));
      render_steps(d.steps, out);
      return out;
    }
    case DeclKind::kExpectFailure: {
      std::string out = fmt::format("expect_failure {} {{", d.expected_code);
      for (const Declaration& inner : d.inner) {
        std::string body = render(inner);
        std::size_t at = 0;
        while (at != std::string::npos) {
          std::size_t nl = body.find('\n', at);
          out += "\n  " + body.substr(at, nl == std::string::npos ? nl : nl - at);
          at = nl == std::string::npos ? nl : nl + 1;
        }
      }
      return out + "\n}";
    }
  }
  return "";
}

std::string render(const SourceFile& file) {
  std::string out;
  for (const Declaration& d : file.declarations) {
    if (!out.empty()) out += "\n\n";
    out += render(d);
  }
  if (!out.empty()) out += "\n";
  return out;
}

}  // namespace dlk
