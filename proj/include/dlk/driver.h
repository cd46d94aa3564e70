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

#ifndef DLK_DRIVER_H_
#define DLK_DRIVER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dlk/diagnostic.h"
#include "dlk/env.h"

namespace dlk {

struct CheckOptions {
  std::vector<std::string> packs;
  // Raw axioms asserted without the well-formedness discipline. Unknown
  // identifiers in them become Proposition constants.
  std::vector<std::string> admitted;
  std::uint64_t fuel = 10000;
};

struct CheckReport {
  std::string path;
  std::vector<std::string> messages;  // "Verified: Name", "Value: v : T"
  std::vector<Diagnostic> diagnostics;
  TheoryEnv env;  // theory after all accepted declarations

  bool ok() const { return diagnostics.empty(); }
};

// Checks every declaration of a source file in order. A failing declaration
// is reported and skipped; later ones are still checked.
CheckReport check_source(std::string_view text, const std::string& path,
                         const CheckOptions& options = {});

// Adds the admitted axioms of `options` to `env`.
TheoryEnv admit_axioms(TheoryEnv env, const std::vector<std::string>& raw);

}  // namespace dlk

#endif  // DLK_DRIVER_H_
