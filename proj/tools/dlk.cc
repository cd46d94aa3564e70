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

// dlk: command-line front end for the kernel.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dlk/corpus.h"
#include "dlk/driver.h"
#include "dlk/syntax.h"
#include "dlk/theories.h"
#include "dlk/types.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_packs(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// The diagnostic, then the offending source line with the span underlined.
std::string show(const dlk::Diagnostic& d, const std::string& path,
                 const std::string& content) {
  std::string out = dlk::format_diagnostic(d, path);
  if (!d.span.valid() || d.span.offset > content.size()) return out;
  std::size_t begin = content.rfind('\n', d.span.offset);
  begin = begin == std::string::npos ? 0 : begin + 1;
  std::size_t end = content.find('\n', d.span.offset);
  if (end == std::string::npos) end = content.size();
  std::size_t width =
      std::max<std::size_t>(1, std::min(d.span.length, end - d.span.offset));
  out += fmt::format("\n  | {}\n  | {}{}", content.substr(begin, end - begin),
                     std::string(d.span.offset - begin, ' '),
                     std::string(width, '^'));
  return out;
}

nlohmann::json diagnostics_json(const std::vector<dlk::Diagnostic>& ds) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : ds) out.push_back(dlk::to_json(d));
  return out;
}

int run_check(const std::vector<std::string>& files,
              const dlk::CheckOptions& options, bool json) {
  bool all_ok = true;
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& path : files) {
    std::string content = read_file(path);
    dlk::CheckReport report = dlk::check_source(content, path, options);
    all_ok = all_ok && report.ok();
    if (json) {
      cases.push_back({{"path", path},
                       {"outcome", report.ok() ? "pass" : "fail"},
                       {"messages", report.messages},
                       {"diagnostics", diagnostics_json(report.diagnostics)}});
      continue;
    }
    for (const auto& m : report.messages) fmt::print("{}\n", m);
    for (const auto& d : report.diagnostics) {
      fmt::print("{}\n", show(d, path, content));
    }
  }
  if (json) {
    nlohmann::json out = {{"status", all_ok ? "pass" : "fail"},
                          {"cases", cases}};
    fmt::print("{}\n", out.dump(2));
  }
  return all_ok ? kOk : kFailed;
}

int run_corpus(const std::string& dir, std::uint64_t fuel, bool json) {
  dlk::CorpusReport report = dlk::run_corpus(dir, fuel);
  if (json) {
    fmt::print("{}\n", dlk::to_json(report).dump(2));
    return report.ok() ? kOk : kFailed;
  }
  for (const auto& c : report.cases) {
    fmt::print("{} {} ({:.3f}s)\n", c.pass ? "PASS" : "FAIL", c.spec.path,
               c.seconds);
    if (!c.pass) fmt::print("    {}\n", c.detail);
  }
  fmt::print("{} passed, {} failed, {} total in {:.3f}s\n", report.passed,
             report.failed, report.cases.size(), report.wall_seconds);
  return report.ok() ? kOk : kFailed;
}

int run_axioms(const std::vector<std::string>& packs, bool json) {
  dlk::TheoryEnv env = dlk::load_theory(packs);
  auto selected = [&](const std::string& origin) {
    if (packs.empty()) return origin == "mathematics";
    return std::find(packs.begin(), packs.end(), origin) != packs.end();
  };
  nlohmann::json out = nlohmann::json::array();
  std::vector<std::string> lines;
  for (const auto& [name, c] : env.constants()) {
    if (!selected(c.origin)) continue;
    lines.push_back(fmt::format("const {} : {}", name, dlk::render(*c.type)));
    out.push_back({{"kind", "const"}, {"name", name},
                   {"type", dlk::render(*c.type)}, {"pack", c.origin}});
  }
  for (const auto& [name, d] : env.definitions()) {
    if (!selected(d.origin)) continue;
    std::string params;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      params += fmt::format("{}{}: {}", i ? ", " : "", d.params[i],
                            dlk::render(*d.param_types[i]));
    }
    if (!params.empty()) params = "[" + params + "]";
    lines.push_back(
        fmt::format("def {}{} := {}", name, params, dlk::render(*d.body)));
    out.push_back({{"kind", "def"}, {"name", name}, {"params", params},
                   {"body", dlk::render(*d.body)}, {"pack", d.origin}});
  }
  for (const auto& a : env.axioms()) {
    if (!selected(a.origin)) continue;
    lines.push_back(fmt::format("axiom {} : {}", a.name,
                                dlk::render(a.statement)));
    out.push_back({{"kind", "axiom"}, {"name", a.name},
                   {"statement", dlk::render(a.statement)},
                   {"pack", a.origin}});
  }
  if (json) {
    fmt::print("{}\n", out.dump(2));
  } else {
    for (const auto& l : lines) fmt::print("{}\n", l);
  }
  return kOk;
}

int run_parse(const std::string& path, bool dump) {
  std::string content = read_file(path);
  dlk::SourceFile file = dlk::parse_file(content, path);
  fmt::print("{}", dump ? dlk::dump_ast(file) : dlk::render(file));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlk: proof-checking kernel for Classical Direct Logic"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string theory;
  bool json = false;
  std::uint64_t fuel = 10000;
  std::vector<std::string> admitted;
  std::string dir = "corpus";
  bool dump = false;
  auto fuel_range =
      CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max());

  auto* check = app.add_subcommand("check", "Check proof files");
  check->add_option("files", files, "Source files (.dlp)")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_option("--theory", theory,
                    "Comma-separated packs to load: nat, sets, reals");
  check->add_flag("--json", json, "Print a JSON report");
  check->add_option("--fuel", fuel, "Evaluation step budget")
      ->check(fuel_range);
  check->add_option("--admit-unsound-axiom", admitted,
                    "Assert a raw axiom without well-formedness checks");

  auto* corpus = app.add_subcommand("corpus", "Run a corpus directory");
  corpus->add_option("--dir", dir, "Corpus directory")
      ->check(CLI::ExistingDirectory);
  corpus->add_flag("--json", json, "Print a JSON report");
  corpus->add_option("--fuel", fuel, "Evaluation step budget")
      ->check(fuel_range);

  auto* axioms = app.add_subcommand("axioms", "List a theory pack");
  axioms->add_option("--theory", theory,
                     "Comma-separated packs: nat, sets, reals");
  axioms->add_flag("--json", json, "Print JSON");

  std::string parse_path;
  auto* parse = app.add_subcommand("parse", "Parse a file and print it");
  parse->add_option("file", parse_path, "Source file")
      ->required()
      ->check(CLI::ExistingFile);
  parse->add_flag("--dump-ast", dump, "Print the syntax tree with spans");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  for (const auto& p : split_packs(theory)) {
    const auto& known = dlk::known_packs();
    if (std::find(known.begin(), known.end(), p) == known.end()) {
      std::cerr << "unknown theory pack '" << p
                << "' (available: nat, sets, reals)\n";
      return kUsage;
    }
  }

  try {
    if (*check) {
      dlk::CheckOptions options{split_packs(theory), admitted, fuel};
      return run_check(files, options, json);
    }
    if (*corpus) return run_corpus(dir, fuel, json);
    if (*axioms) return run_axioms(split_packs(theory), json);
    return run_parse(parse_path, dump);
  } catch (const dlk::KernelError& e) {
    std::string path = *parse ? parse_path : std::string("<input>");
    fmt::print("{}\n", show(e.diagnostic(), path,
                            *parse ? read_file(parse_path) : std::string()));
    return kFailed;
  }
}
