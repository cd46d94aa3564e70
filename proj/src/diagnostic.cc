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

#include "dlk/diagnostic.h"

#include <fmt/format.h>

#include <algorithm>
#include <utility>

namespace dlk {

Span cover(const Span& first, const Span& last) {
  if (!first.valid()) return last;
  if (!last.valid()) return first;
  Span out = first;
  std::size_t end = std::max(first.end(), last.end());
  out.length = end - first.offset;
  return out;
}

KernelError::KernelError(Diagnostic diagnostic)
    : std::runtime_error(fmt::format("{}: {}", diagnostic.code,
                                     diagnostic.message)),
      diagnostic_(std::move(diagnostic)) {}

void fail(std::string_view code, const Span& span, std::string message,
          std::vector<std::string> notes) {
  throw KernelError(Diagnostic{std::string(code), std::move(message), span,
                               std::move(notes)});
}

nlohmann::json to_json(const Span& span) {
  return {{"offset", span.offset},
          {"length", span.length},
          {"line", span.line},
          {"column", span.column}};
}

nlohmann::json to_json(const Diagnostic& diagnostic) {
  return {{"code", diagnostic.code},
          {"message", diagnostic.message},
          {"span", to_json(diagnostic.span)},
          {"notes", diagnostic.notes}};
}

std::string format_diagnostic(const Diagnostic& diagnostic,
                              std::string_view path) {
  std::string out;
  if (diagnostic.span.valid()) {
    out = fmt::format("{}:{}:{}: error {}: {}", path, diagnostic.span.line,
                      diagnostic.span.column, diagnostic.code,
                      diagnostic.message);
  } else {
    out = fmt::format("{}: error {}: {}", path, diagnostic.code,
                      diagnostic.message);
  }
  for (const auto& note : diagnostic.notes) {
    out += fmt::format("\n    note: {}", note);
  }
  return out;
}

}  // namespace dlk
