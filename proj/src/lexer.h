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

#ifndef DLK_SRC_LEXER_H_
#define DLK_SRC_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "dlk/diagnostic.h"

namespace dlk::internal {

enum class TokenKind { kIdent, kNumber, kString, kSymbol, kHole, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // identifier/symbol text; string contents (unescaped)
  Span span;
  bool line_start = false;  // first token on its line
};

// Splits UTF-8 source into tokens; `//` comments and whitespace are dropped.
// Non-ASCII bytes are accepted only inside string literals and comments.
std::vector<Token> tokenize(std::string_view text);

bool is_reserved(std::string_view word);

}  // namespace dlk::internal

#endif  // DLK_SRC_LEXER_H_
