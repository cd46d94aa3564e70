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

#include "dlk/types.h"

#include <fmt/format.h>

#include <utility>

namespace dlk {

std::string_view base_name(BaseType base) {
  switch (base) {
    case BaseType::kBoolean:
      return "Bool";
    case BaseType::kNat:
      return "Nat";
    case BaseType::kString:
      return "String";
    case BaseType::kSentence:
      return "Sentence";
    case BaseType::kProposition:
      return "Proposition";
    case BaseType::kProof:
      return "Proof";
    case BaseType::kTheory:
      return "Theory";
  }
  return "?";
}

namespace {

TypePtr make(Type::Kind kind, std::vector<TypePtr> args) {
  auto t = std::make_shared<Type>();
  t->kind = kind;
  t->args = std::move(args);
  return t;
}

TypePtr rebuild(const TypePtr& t, std::vector<TypePtr> args) {
  auto copy = std::make_shared<Type>(*t);
  copy->args = std::move(args);
  return copy;
}

std::string_view ctor_name(Type::Kind kind) {
  switch (kind) {
    case Type::Kind::kUnion:
      return "Union";
    case Type::Kind::kPair:
      return "Pair";
    case Type::Kind::kProc:
      return "Proc";
    case Type::Kind::kFun:
      return "Fun";
    case Type::Kind::kTermOf:
      return "Term";
    default:
      return "";
  }
}

std::string_view position_name(const Type& t, std::size_t i) {
  switch (t.kind) {
    case Type::Kind::kUnion:
      return i == 0 ? "left" : "right";
    case Type::Kind::kPair:
      return i == 0 ? "first" : "second";
    case Type::Kind::kProc:
    case Type::Kind::kFun:
      return i == 0 ? "domain" : "codomain";
    case Type::Kind::kTermOf:
      return "inner";
    default:
      return "argument";
  }
}

bool occurs(int meta, const Type& t) {
  if (t.kind == Type::Kind::kMeta) return t.meta == meta;
  for (const auto& a : t.args) {
    if (occurs(meta, *a)) return true;
  }
  return false;
}

TypePtr replace_meta(const TypePtr& t, int meta, const TypePtr& value) {
  if (t->kind == Type::Kind::kMeta) return t->meta == meta ? value : t;
  if (t->args.empty() || !occurs(meta, *t)) return t;
  std::vector<TypePtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(replace_meta(a, meta, value));
  return rebuild(t, std::move(args));
}

void collect_metas(const Type& t, std::set<int>& out) {
  if (t.kind == Type::Kind::kMeta) out.insert(t.meta);
  for (const auto& a : t.args) collect_metas(*a, out);
}

struct Unifier {
  Substitution s;
  Span span;
  TypePtr top_a;
  TypePtr top_b;
  std::vector<std::string> path;

  std::string where() const {
    if (path.empty()) return "";
    std::string out = "at";
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      out += " " + *it;
      if (std::next(it) != path.rend()) out += " of";
    }
    return out;
  }

  [[noreturn]] void mismatch(const TypePtr& a, const TypePtr& b) {
    std::vector<std::string> notes;
    if (!path.empty()) notes.push_back(where());
    if (!type_equal(*a, *top_a) || !type_equal(*b, *top_b)) {
      notes.push_back(fmt::format("while unifying {} with {}",
                                  render(*s.apply(top_a)),
                                  render(*s.apply(top_b))));
    }
    fail(codes::kTypeMismatch, span,
         fmt::format("type mismatch: {} vs {}", render(*a), render(*b)),
         std::move(notes));
  }

  void bind(int meta, const TypePtr& t) {
    if (t->kind == Type::Kind::kMeta && t->meta == meta) return;
    if (occurs(meta, *t)) {
      std::vector<std::string> notes{
          "no finite (strict) type satisfies this equation, so the "
          "self-application has no type"};
      if (!path.empty()) notes.insert(notes.begin(), where());
      fail(codes::kOccursCheck, span,
           fmt::format("occurs check: ?{} would have to equal {}", meta,
                       render(*t)),
           std::move(notes));
    }
    s.bind(meta, t);
  }

  void run(TypePtr a, TypePtr b) {
    a = s.apply(a);
    b = s.apply(b);
    if (a->kind == Type::Kind::kMeta) return bind(a->meta, b);
    if (b->kind == Type::Kind::kMeta) return bind(b->meta, a);
    if (a->kind != b->kind) mismatch(a, b);
    switch (a->kind) {
      case Type::Kind::kBase:
        if (a->base != b->base) mismatch(a, b);
        return;
      case Type::Kind::kNamed:
        if (a->name != b->name || a->args.size() != b->args.size())
          mismatch(a, b);
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      path.emplace_back(position_name(*a, i));
      run(a->args[i], b->args[i]);
      path.pop_back();
    }
  }
};

}  // namespace

TypePtr base_type(BaseType base) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::kBase;
  t->base = base;
  return t;
}
TypePtr union_type(TypePtr l, TypePtr r) {
  return make(Type::Kind::kUnion, {std::move(l), std::move(r)});
}
TypePtr pair_type(TypePtr a, TypePtr b) {
  return make(Type::Kind::kPair, {std::move(a), std::move(b)});
}
TypePtr proc_type(TypePtr d, TypePtr c) {
  return make(Type::Kind::kProc, {std::move(d), std::move(c)});
}
TypePtr fun_type(TypePtr d, TypePtr c) {
  return make(Type::Kind::kFun, {std::move(d), std::move(c)});
}
TypePtr term_of(TypePtr inner) {
  return make(Type::Kind::kTermOf, {std::move(inner)});
}
TypePtr meta_type(int id) {
  auto t = std::make_shared<Type>();
  t->kind = Type::Kind::kMeta;
  t->meta = id;
  return t;
}
TypePtr named_type(std::string name, std::vector<TypePtr> args) {
  auto t = make(Type::Kind::kNamed, std::move(args));
  std::const_pointer_cast<Type>(t)->name = std::move(name);
  return t;
}

bool is_base(const TypePtr& t, BaseType base) {
  return t && t->kind == Type::Kind::kBase && t->base == base;
}

bool type_equal(const Type& a, const Type& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Type::Kind::kBase:
      return a.base == b.base;
    case Type::Kind::kMeta:
      return a.meta == b.meta;
    case Type::Kind::kNamed:
      if (a.name != b.name) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!type_equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool contains_meta(const Type& t) {
  if (t.kind == Type::Kind::kMeta) return true;
  for (const auto& a : t.args) {
    if (contains_meta(*a)) return true;
  }
  return false;
}

std::set<int> metas_of(const Type& t) {
  std::set<int> out;
  collect_metas(t, out);
  return out;
}

std::string render(const Type& t) {
  switch (t.kind) {
    case Type::Kind::kBase:
      return std::string(base_name(t.base));
    case Type::Kind::kMeta:
      return fmt::format("?{}", t.meta);
    case Type::Kind::kNamed:
      if (t.args.empty()) return t.name;
      break;
    default:
      break;
  }
  std::string out(t.kind == Type::Kind::kNamed ? std::string_view(t.name)
                                               : ctor_name(t.kind));
  out += "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += render(*t.args[i]);
  }
  return out + ")";
}

TypePtr Substitution::apply(const TypePtr& t) const {
  if (map_.empty()) return t;
  if (t->kind == Type::Kind::kMeta) {
    auto it = map_.find(t->meta);
    return it == map_.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  std::vector<TypePtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(apply(a));
    changed = changed || args.back() != a;
  }
  return changed ? rebuild(t, std::move(args)) : t;
}

void Substitution::bind(int meta, const TypePtr& t) {
  for (auto& [id, value] : map_) value = replace_meta(value, meta, t);
  map_[meta] = t;
}

Substitution unify(const TypePtr& a, const TypePtr& b, Substitution s,
                   const Span& span) {
  Unifier u{std::move(s), span, a, b, {}};
  u.run(a, b);
  return std::move(u.s);
}

void wf_type(const TypePtr& t, const Span& span) {
  if (contains_meta(*t)) {
    fail(codes::kUnsolvedHole, span,
         fmt::format("unsolved type hole in {}", render(*t)),
         {"every `?` must be determined by the surrounding declaration"});
  }
}

namespace {

TypePtr rename_metas(const TypePtr& t, const std::map<int, TypePtr>& fresh) {
  if (t->kind == Type::Kind::kMeta) return fresh.at(t->meta);
  if (t->args.empty()) return t;
  std::vector<TypePtr> args;
  for (const auto& a : t->args) args.push_back(rename_metas(a, fresh));
  return rebuild(t, std::move(args));
}

}  // namespace

TypePtr instantiate(const TypePtr& scheme, MetaSupply& supply) {
  std::map<int, TypePtr> fresh;
  for (int id : metas_of(*scheme)) fresh[id] = supply.fresh();
  if (fresh.empty()) return scheme;
  return rename_metas(scheme, fresh);
}

}  // namespace dlk
