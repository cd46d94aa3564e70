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

#ifndef DLK_DIAGNOSTIC_H_
#define DLK_DIAGNOSTIC_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dlk {

// Location of a construct in its source text. Lines and columns are 1-based;
// a default-constructed span (line 0) means "no source location".
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
  std::size_t end() const { return offset + length; }
  bool contains(const Span& other) const {
    return offset <= other.offset && other.end() <= end();
  }
  friend bool operator==(const Span&, const Span&) = default;
};

// Smallest span covering both arguments.
Span cover(const Span& first, const Span& last);

// Stable diagnostic codes.
namespace codes {
inline constexpr std::string_view kSyntax = "E001";
inline constexpr std::string_view kUnknownIdentifier = "E010";
inline constexpr std::string_view kTypeMismatch = "E020";
inline constexpr std::string_view kOccursCheck = "E021";
inline constexpr std::string_view kUnsolvedHole = "E022";
inline constexpr std::string_view kNoStrictType = "E023";
inline constexpr std::string_view kRuleMismatch = "E030";
inline constexpr std::string_view kFreshness = "E031";
inline constexpr std::string_view kDanglingReference = "E032";
inline constexpr std::string_view kGoalMismatch = "E033";
inline constexpr std::string_view kDuplicateName = "E034";
inline constexpr std::string_view kSelfReference = "E035";
inline constexpr std::string_view kOpenHypothesis = "E036";
inline constexpr std::string_view kOpenTerm = "E040";
inline constexpr std::string_view kBudgetExhausted = "E050";
inline constexpr std::string_view kStuck = "E051";
inline constexpr std::string_view kCaseHeader = "E060";
inline constexpr std::string_view kExpectationUnmet = "E061";
}  // namespace codes

struct Diagnostic {
  std::string code;
  std::string message;
  Span span;
  std::vector<std::string> notes;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Every kernel operation reports failure by throwing KernelError.
class KernelError : public std::runtime_error {
 public:
  explicit KernelError(Diagnostic diagnostic);

  const Diagnostic& diagnostic() const { return diagnostic_; }
  const std::string& code() const { return diagnostic_.code; }

 private:
  Diagnostic diagnostic_;
};

[[noreturn]] void fail(std::string_view code, const Span& span,
                       std::string message,
                       std::vector<std::string> notes = {});

nlohmann::json to_json(const Span& span);
nlohmann::json to_json(const Diagnostic& diagnostic);

// "path:line:col: error E021: message" followed by indented notes.
std::string format_diagnostic(const Diagnostic& diagnostic,
                              std::string_view path);

}  // namespace dlk

#endif  // DLK_DIAGNOSTIC_H_
