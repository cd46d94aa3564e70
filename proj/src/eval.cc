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

#include <limits>
#include <utility>

#include "dlk/abstraction.h"
#include "dlk/typecheck.h"

namespace dlk {

// Runtime environment: one frame per binder or Let group. Let frames are
// filled in after creation, which is what makes them recursive.
struct EnvFrame {
  std::vector<std::string> names;
  std::vector<ValuePtr> values;
  std::shared_ptr<EnvFrame> parent;
};

namespace {

using EnvPtr = std::shared_ptr<EnvFrame>;

ValuePtr make_value(Value v) { return std::make_shared<Value>(std::move(v)); }

ValuePtr boolean_value(bool b) {
  Value v;
  v.kind = Value::Kind::kBoolean;
  v.boolean = b;
  return make_value(std::move(v));
}

ValuePtr natural_value(std::uint64_t n) {
  Value v;
  v.kind = Value::Kind::kNatural;
  v.natural = n;
  return make_value(std::move(v));
}

ValuePtr string_value(std::string s) {
  Value v;
  v.kind = Value::Kind::kString;
  v.text = std::move(s);
  return make_value(std::move(v));
}

ValuePtr closure(std::vector<std::string> params, NodePtr body, EnvPtr env) {
  Value v;
  v.kind = Value::Kind::kClosure;
  v.params = std::move(params);
  v.syntax = std::move(body);
  v.env = std::move(env);
  return make_value(std::move(v));
}

ValuePtr primitive(std::string name) {
  Value v;
  v.kind = Value::Kind::kPrimitive;
  v.text = std::move(name);
  return make_value(std::move(v));
}

ValuePtr pair_value(std::vector<ValuePtr> parts) {
  while (parts.size() > 2) {
    ValuePtr last = parts.back();
    parts.pop_back();
    ValuePtr prev = parts.back();
    parts.pop_back();
    Value v;
    v.kind = Value::Kind::kPair;
    v.parts = {prev, last};
    parts.push_back(make_value(std::move(v)));
  }
  Value v;
  v.kind = Value::Kind::kPair;
  v.parts = std::move(parts);
  return make_value(std::move(v));
}

const ValuePtr* find(const EnvPtr& env, const std::string& name) {
  for (EnvFrame* f = env.get(); f; f = f->parent.get()) {
    for (std::size_t i = f->names.size(); i-- > 0;) {
      if (f->names[i] == name) return &f->values[i];
    }
  }
  return nullptr;
}

[[noreturn]] void stuck(const Span& span, std::string message) {
  fail(codes::kStuck, span, std::move(message),
       {"evaluation only covers the computational fragment"});
}

// Literal syntax for a runtime value, used when a quotation mentions
// variables bound at run time.
NodePtr reify(const Value& v) {
  switch (v.kind) {
    case Value::Kind::kNatural: {
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kNumeral;
      n->text = std::to_string(v.natural);
      return n;
    }
    case Value::Kind::kBoolean: {
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kBoolean;
      n->text = v.boolean ? "True" : "False";
      return n;
    }
    case Value::Kind::kString: {
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kString;
      n->text = v.text;
      return n;
    }
    default:
      return nullptr;
  }
}

// Continuation frames. The machine's stack of these is the only storage for
// pending work, so deep programs cost heap memory, not native stack.
struct Frame {
  enum class Kind { kChildren, kCondition, kLetInit, kUnquote };
  Kind kind = Kind::kChildren;
  const Node* node = nullptr;
  EnvPtr env;
  std::size_t next = 0;
  std::vector<ValuePtr> values;
};

class Machine {
 public:
  Machine(const TheoryEnv& theory, std::uint64_t budget)
      : theory_(theory), budget_(budget) {}

  ValuePtr run(const Node& root, EnvPtr env) {
    eval(root, std::move(env));
    while (true) {
      tick();
      if (control_) {
        step_eval();
        continue;
      }
      if (stack_.empty()) return value_;
      step_return();
    }
  }

  std::uint64_t steps() const { return steps_; }

 private:
  void tick() {
    if (steps_ == budget_) {
      fail(codes::kBudgetExhausted, span_,
           fmt::format("not shown to converge within {} steps", budget_),
           {"the budget bounds evaluation; this is not a divergence proof",
            "raise it with --fuel"});
    }
    ++steps_;
  }

  void eval(const Node& n, EnvPtr env) {
    control_ = &n;
    control_env_ = std::move(env);
  }

  void produce(ValuePtr v) {
    control_ = nullptr;
    control_env_.reset();
    value_ = std::move(v);
  }

  void push_children(const Node& n, EnvPtr env) {
    Frame f;
    f.kind = Frame::Kind::kChildren;
    f.node = &n;
    f.env = env;
    stack_.push_back(std::move(f));
    eval(*n.children[0], std::move(env));
  }

  void step_eval() {
    const Node& n = *control_;
    EnvPtr env = control_env_;
    if (n.span.valid()) span_ = n.span;
    switch (n.kind) {
      case NodeKind::kNumeral: {
        std::uint64_t value = 0;
        for (char c : n.text) {
          std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
          if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
            stuck(n.span, "numeral exceeds the 64-bit evaluation range");
          value = value * 10 + digit;
        }
        return produce(natural_value(value));
      }
      case NodeKind::kString:
        return produce(string_value(n.text));
      case NodeKind::kBoolean:
        return produce(boolean_value(n.text == "True"));
      case NodeKind::kOpaque: {
        Value v;
        v.kind = Value::Kind::kOpaque;
        v.text = n.text;
        return produce(make_value(std::move(v)));
      }
      case NodeKind::kIdentifier:
        return identifier(n, env);
      case NodeKind::kLambda:
        return produce(closure({n.text}, n.children[0], env));
      case NodeKind::kQuote:
        return produce(quotation(n, env));
      case NodeKind::kConditional: {
        Frame f;
        f.kind = Frame::Kind::kCondition;
        f.node = &n;
        f.env = env;
        stack_.push_back(std::move(f));
        return eval(*n.children[0], env);
      }
      case NodeKind::kLet: {
        auto frame = std::make_shared<EnvFrame>();
        frame->names = n.names;
        frame->values.resize(n.names.size());
        frame->parent = env;
        Frame f;
        f.kind = Frame::Kind::kLetInit;
        f.node = &n;
        f.env = frame;
        stack_.push_back(std::move(f));
        return eval(*n.children[0], frame);
      }
      case NodeKind::kAbstract: {
        Frame f;
        f.kind = Frame::Kind::kUnquote;
        f.node = &n;
        stack_.push_back(std::move(f));
        return eval(*n.children[0], env);
      }
      case NodeKind::kApply:
      case NodeKind::kCall:
      case NodeKind::kNot:
      case NodeKind::kAnd:
      case NodeKind::kOr:
      case NodeKind::kImplies:
      case NodeKind::kIff:
      case NodeKind::kRelation:
        return push_children(n, env);
      default:
        stuck(n.span, fmt::format("'{}' has no computational content",
                                  render(n)));
    }
  }

  void identifier(const Node& n, const EnvPtr& env) {
    if (const ValuePtr* slot = find(env, n.text)) {
      if (!*slot) {
        stuck(n.span, fmt::format("'{}' is used before its Let binding has "
                                  "a value",
                                  n.text));
      }
      return produce(*slot);
    }
    if (const ProcedureInfo* p = theory_.procedure(n.text)) {
      if (p->params.empty()) return eval(*p->body, nullptr);
      return produce(closure(p->params, p->body, nullptr));
    }
    if (const DefinitionInfo* d = theory_.definition(n.text)) {
      if (d->sentence) {
        stuck(n.span, fmt::format("definition '{}' is a proposition, not a "
                                  "computable value",
                                  n.text));
      }
      if (d->params.empty()) return eval(*d->body, nullptr);
      return produce(closure(d->params, d->body, nullptr));
    }
    if (n.text == "Successor" || n.text == "Length") {
      return produce(primitive(n.text));
    }
    stuck(n.span, fmt::format("constant '{}' has no computational content",
                              n.text));
  }

  ValuePtr quotation(const Node& n, const EnvPtr& env) {
    NodePtr tree = n.children[0];
    for (const auto& name : free_identifiers(*tree)) {
      const ValuePtr* slot = find(env, name);
      if (!slot || !*slot) continue;
      if (NodePtr literal = reify(**slot)) {
        tree = substitute(tree, name, literal);
      }
    }
    Value v;
    v.kind = Value::Kind::kSyntax;
    v.syntax = std::move(tree);
    return make_value(std::move(v));
  }

  void step_return() {
    Frame& f = stack_.back();
    switch (f.kind) {
      case Frame::Kind::kCondition: {
        const Node& n = *f.node;
        EnvPtr env = f.env;
        if (value_->kind != Value::Kind::kBoolean) {
          stuck(n.children[0]->span, "condition is not a Boolean value");
        }
        bool taken = value_->boolean;
        stack_.pop_back();
        return eval(*n.children[taken ? 1 : 2], env);
      }
      case Frame::Kind::kLetInit: {
        const Node& n = *f.node;
        f.env->values[f.next] = value_;
        ++f.next;
        EnvPtr env = f.env;
        if (f.next < n.names.size()) return eval(*n.children[f.next], env);
        stack_.pop_back();
        return eval(*n.children.back(), env);
      }
      case Frame::Kind::kUnquote: {
        const Node& n = *f.node;
        stack_.pop_back();
        if (value_->kind == Value::Kind::kSyntax) {
          NodePtr tree = value_->syntax;
          held_.push_back(tree);
          return eval(*tree, nullptr);
        }
        stuck(n.span, "only quoted syntax can be abstracted at run time");
      }
      case Frame::Kind::kChildren: {
        f.values.push_back(value_);
        ++f.next;
        if (f.next < f.node->children.size()) {
          return eval(*f.node->children[f.next], f.env);
        }
        Frame done = std::move(f);
        stack_.pop_back();
        return reduce(*done.node, std::move(done.values));
      }
    }
  }

  static bool truth(const Node& n, const ValuePtr& v) {
    if (v->kind != Value::Kind::kBoolean) {
      stuck(n.span, "connective applied to a non-Boolean value");
    }
    return v->boolean;
  }

  void reduce(const Node& n, std::vector<ValuePtr> values) {
    switch (n.kind) {
      case NodeKind::kNot:
        return produce(boolean_value(!truth(n, values[0])));
      case NodeKind::kAnd:
        return produce(
            boolean_value(truth(n, values[0]) && truth(n, values[1])));
      case NodeKind::kOr:
        return produce(
            boolean_value(truth(n, values[0]) || truth(n, values[1])));
      case NodeKind::kImplies:
        return produce(
            boolean_value(!truth(n, values[0]) || truth(n, values[1])));
      case NodeKind::kIff:
        return produce(
            boolean_value(truth(n, values[0]) == truth(n, values[1])));
      case NodeKind::kRelation:
        return produce(boolean_value(relation(n, *values[0], *values[1])));
      default: {
        ValuePtr head = values[0];
        values.erase(values.begin());
        return apply(n, head, std::move(values));
      }
    }
  }

  bool relation(const Node& n, const Value& a, const Value& b) {
    const std::string& op = n.text;
    if (op == "=") return equal(n, a, b);
    if (op == "!=") return !equal(n, a, b);
    if (op == "<" || op == ">" || op == "<=" || op == ">=") {
      if (a.kind != Value::Kind::kNatural || b.kind != Value::Kind::kNatural) {
        stuck(n.span, fmt::format("`{}` is only computable on Nat", op));
      }
      return compare(op, a.natural, b.natural);
    }
    stuck(n.span, fmt::format("relation `{}` is not computable", op));
  }

  static bool compare(std::string_view op, std::uint64_t a, std::uint64_t b) {
    if (op == "<" || op == "lt") return a < b;
    if (op == ">" || op == "gt") return a > b;
    if (op == "<=" || op == "le") return a <= b;
    return a >= b;
  }

  bool equal(const Node& n, const Value& a, const Value& b) {
    if (a.kind == Value::Kind::kClosure || b.kind == Value::Kind::kClosure ||
        a.kind == Value::Kind::kPrimitive ||
        b.kind == Value::Kind::kPrimitive) {
      stuck(n.span, "equality of procedures is not computable");
    }
    return value_equal(a, b);
  }

  void apply(const Node& n, const ValuePtr& head,
             std::vector<ValuePtr> args) {
    if (head->kind == Value::Kind::kPrimitive) {
      return produce(primitive_call(n, head->text, args));
    }
    if (head->kind != Value::Kind::kClosure) {
      stuck(n.span, fmt::format("cannot apply {}", render(*head)));
    }
    const auto& params = head->params;
    if (params.size() == 1 && args.size() > 1) {
      args = {pair_value(std::move(args))};
    }
    while (params.size() > args.size() && !args.empty() &&
           args.back()->kind == Value::Kind::kPair) {
      ValuePtr last = args.back();
      args.pop_back();
      args.insert(args.end(), last->parts.begin(), last->parts.end());
    }
    if (params.size() != args.size()) {
      stuck(n.span, fmt::format("expected {} arguments, got {}", params.size(),
                                args.size()));
    }
    auto frame = std::make_shared<EnvFrame>();
    frame->names = params;
    frame->values = std::move(args);
    frame->parent = head->env;
    eval(*head->syntax, std::move(frame));
  }

  ValuePtr primitive_call(const Node& n, const std::string& name,
                          const std::vector<ValuePtr>& args) {
    if (name == "Successor" && args.size() == 1 &&
        args[0]->kind == Value::Kind::kNatural) {
      if (args[0]->natural == std::numeric_limits<std::uint64_t>::max()) {
        stuck(n.span, "Successor overflows the 64-bit evaluation range");
      }
      return natural_value(args[0]->natural + 1);
    }
    if (name == "Length" && args.size() == 1 &&
        args[0]->kind == Value::Kind::kString) {
      return natural_value(args[0]->text.size());
    }
    stuck(n.span, fmt::format("bad arguments to primitive {}", name));
  }

  const TheoryEnv& theory_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  Span span_;
  const Node* control_ = nullptr;
  EnvPtr control_env_;
  ValuePtr value_;
  std::vector<Frame> stack_;
  // Trees produced at run time must outlive the frames that point into them.
  std::vector<NodePtr> held_;
};

void require_closed(const TheoryEnv& env, const Node& n) {
  for (const auto& name : free_identifiers(n)) {
    if (!is_global_name(env, name)) {
      fail(codes::kOpenTerm, n.span,
           fmt::format("cannot evaluate an open term: '{}' is free", name));
    }
  }
}

}  // namespace

std::string render(const Value& v) {
  switch (v.kind) {
    case Value::Kind::kBoolean:
      return v.boolean ? "True" : "False";
    case Value::Kind::kNatural:
      return std::to_string(v.natural);
    case Value::Kind::kString: {
      auto n = std::make_shared<Node>();
      n->kind = NodeKind::kString;
      n->text = v.text;
      return render(*n);
    }
    case Value::Kind::kSyntax:
      return fmt::format("quote({})", render(*v.syntax));
    case Value::Kind::kClosure:
      return "<procedure>";
    case Value::Kind::kPrimitive:
      return fmt::format("<primitive {}>", v.text);
    case Value::Kind::kPair:
      return fmt::format("[{}, {}]", render(*v.parts[0]), render(*v.parts[1]));
    case Value::Kind::kOpaque:
      return fmt::format("#opaque({})", v.text);
  }
  return "";
}

bool value_equal(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::kBoolean:
      return a.boolean == b.boolean;
    case Value::Kind::kNatural:
      return a.natural == b.natural;
    case Value::Kind::kString:
    case Value::Kind::kOpaque:
    case Value::Kind::kPrimitive:
      return a.text == b.text;
    case Value::Kind::kSyntax:
      return alpha_equal(*a.syntax, *b.syntax);
    case Value::Kind::kPair:
      return value_equal(*a.parts[0], *b.parts[0]) &&
             value_equal(*a.parts[1], *b.parts[1]);
    case Value::Kind::kClosure:
      return &a == &b;
  }
  return false;
}

EvalResult evaluate(const TheoryEnv& env, const NodePtr& expression,
                    EvalBudget budget) {
  require_closed(env, *expression);
  TypingContext ctx(env);
  TypePtr type = infer_expression(ctx, *expression);
  Machine machine(env, budget.max_steps);
  ValuePtr value = machine.run(*expression, nullptr);
  return EvalResult{value, ctx.zonk(type), machine.steps()};
}

ValuePtr abstract_term(const TheoryEnv& env, const NodePtr& term,
                       EvalBudget budget) {
  require_closed(env, *term);
  TypingContext ctx(env);
  infer_term(ctx, *term);
  Machine machine(env, budget.max_steps);
  ValuePtr value = machine.run(*term, nullptr);
  if (value->kind == Value::Kind::kSyntax) {
    Machine inner(env, budget.max_steps - machine.steps());
    return inner.run(*value->syntax, nullptr);
  }
  return value;
}

}  // namespace dlk
