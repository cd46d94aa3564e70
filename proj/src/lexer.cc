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

#include "lexer.h"

#include <fmt/format.h>

#include <array>
#include <cctype>

namespace dlk::internal {

namespace {

constexpr std::array<std::string_view, 25> kSymbols = {
    "<=>", "|-", "/\\", "\\/", "=>", ":=", "->", "!=", "<=", ">=", ".[",
    "(",   ")",  "[",   "]",   "{",  "}",  ",",  ":",  "?",  "=",  "<",
    ">",   ".",  "^"};

constexpr std::array<std::string_view, 29> kReserved = {
    "not",      "forall",     "exists",   "in",       "subset",
    "sqsubset", "sqsubseteq", "quote",    "abstract", "provable",
    "Let",      "True",       "False",    "theory",   "const",
    "type",     "axiom",      "def",      "proc",     "eval",
    "proof",    "expect_failure", "by",   "with",     "assume",
    "fix",      "have",       "obtain",   "conclude"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int last_line = 0;
    while (true) {
      skip_space();
      Token tok = next();
      tok.line_start = tok.span.line != last_line;
      last_line = tok.span.line;
      bool done = tok.kind == TokenKind::kEnd;
      out.push_back(std::move(tok));
      if (done) break;
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Span here() const { return Span{pos_, 0, line_, column_}; }

  Token finish(TokenKind kind, std::string text, Span start) {
    start.length = pos_ - start.offset;
    return Token{kind, std::move(text), start, false};
  }

  Token next() {
    Span start = here();
    if (pos_ >= text_.size()) return Token{TokenKind::kEnd, "", start, false};
    char c = text_[pos_];
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      return finish(TokenKind::kIdent,
                    std::string(text_.substr(start.offset,
                                             pos_ - start.offset)),
                    start);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        advance();
      return finish(TokenKind::kNumber,
                    std::string(text_.substr(start.offset,
                                             pos_ - start.offset)),
                    start);
    }
    if (c == '"') return string_literal(start);
    if (c == '?' && ident_start(peek(1))) {
      advance();
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      return finish(TokenKind::kHole,
                    std::string(text_.substr(start.offset + 1,
                                             pos_ - start.offset - 1)),
                    start);
    }
    for (std::string_view sym : kSymbols) {
      if (text_.substr(pos_, sym.size()) == sym) {
        for (std::size_t i = 0; i < sym.size(); ++i) advance();
        return finish(TokenKind::kSymbol, std::string(sym), start);
      }
    }
    start.length = 1;
    if ((static_cast<unsigned char>(c) & 0x80) != 0) {
      fail(codes::kSyntax, start,
           "non-ASCII character outside a string literal or comment",
           {"the surface syntax is ASCII; see docs/surface-syntax.md"});
    }
    fail(codes::kSyntax, start, fmt::format("unexpected character '{}'", c));
  }

  Token string_literal(Span start) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        fail(codes::kSyntax, start, "unterminated string literal");
      }
      char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) continue;
        char e = text_[pos_];
        value.push_back(e == 'n' ? '\n' : e);
        advance();
        continue;
      }
      value.push_back(c);
      advance();
    }
    return finish(TokenKind::kString, std::move(value), start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  return Lexer(text).run();
}

bool is_reserved(std::string_view word) {
  for (std::string_view r : kReserved) {
    if (r == word) return true;
  }
  return false;
}

}  // namespace dlk::internal
