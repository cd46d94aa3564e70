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

#ifndef DLK_CORPUS_H_
#define DLK_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dlk/diagnostic.h"

namespace dlk {

// Expected outcome of a check: success, or a first diagnostic with `code`
// whose span lies inside an occurrence of `span_text` (if given).
struct Expectation {
  bool verified = true;
  std::string code;
  std::string span_text;
};

// Header block of a corpus file: leading `// key: value` comment lines, up
// to the first blank line.
//
//   // description: free text
//   // theory: nat, sets
//   // admit: P <=> not provable(P)
//   // expect: verified | error E021 "x[x]"
//   // expect-without-admit: error E010
struct CorpusCase {
  std::string path;
  std::string description;
  std::vector<std::string> packs;
  std::vector<std::string> admitted;
  Expectation expect;
  std::optional<Expectation> without_admit;
};

struct CaseOutcome {
  CorpusCase spec;
  bool pass = false;
  std::string detail;  // why the case failed, or empty
  std::vector<std::string> messages;
  std::vector<Diagnostic> diagnostics;
  double seconds = 0;
};

struct CorpusReport {
  std::vector<CaseOutcome> cases;  // sorted by path
  std::size_t passed = 0;
  std::size_t failed = 0;
  double wall_seconds = 0;

  bool ok() const { return failed == 0; }
};

// E060 on a missing or malformed header.
CorpusCase parse_case_header(std::string_view content, const std::string& path);

// Does `diagnostics` meet `expect` for a file with the given content?
// Returns the reason if not.
std::optional<std::string> unmet(const Expectation& expect,
                                 const std::vector<Diagnostic>& diagnostics,
                                 std::string_view content);

CaseOutcome run_case(std::string_view content, const std::string& path,
                     std::uint64_t fuel = 10000);

// Runs every `.dlp` file under `dir` (recursively).
CorpusReport run_corpus(const std::filesystem::path& dir,
                        std::uint64_t fuel = 10000);

// {status, cases: [{path, outcome, diagnostics}], totals, wall_seconds}
nlohmann::json to_json(const CorpusReport& report);

}  // namespace dlk

#endif  // DLK_CORPUS_H_
