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

#include "dlk/corpus.h"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <regex>
#include <sstream>
#include <utility>

#include "dlk/driver.h"

namespace dlk {

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Span line_span(std::size_t offset, std::size_t length, int line) {
  return Span{offset, length, line, 1};
}

Expectation parse_expectation(const std::string& value, const Span& span) {
  static const std::regex error_form(
      R"re(error\s+(E[0-9]{3})(?:\s+"([^"]*)")?)re");
  Expectation out;
  if (value == "verified") return out;
  std::smatch m;
  if (!std::regex_match(value, m, error_form)) {
    fail(codes::kCaseHeader, span,
         fmt::format("malformed expectation '{}'", value),
         {"write `verified` or `error E0xx \"span text\"`"});
  }
  out.verified = false;
  out.code = m[1];
  out.span_text = m[2];
  return out;
}

std::vector<std::string> split_packs(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

CorpusCase parse_case_header(std::string_view content,
                             const std::string& path) {
  static const std::regex key_form(R"(//\s*([a-z][a-z-]*):\s*(.*))");
  CorpusCase out;
  out.path = path;
  bool have_expect = false;
  bool in_header = false;
  std::size_t offset = 0;
  int line = 0;
  while (offset < content.size()) {
    std::size_t end = content.find('\n', offset);
    if (end == std::string_view::npos) end = content.size();
    std::string text = trim(content.substr(offset, end - offset));
    ++line;
    Span span = line_span(offset, end - offset, line);
    offset = end + 1;
    // A blank line ends the header block.
    if (text.empty()) {
      if (in_header) break;
      continue;
    }
    if (text.rfind("//", 0) != 0) break;
    in_header = true;
    std::smatch m;
    if (!std::regex_match(text, m, key_form)) continue;
    std::string key = m[1];
    std::string value = trim(m[2].str());
    if (key == "expect") {
      if (have_expect) {
        fail(codes::kCaseHeader, span, "duplicate `expect` header");
      }
      out.expect = parse_expectation(value, span);
      have_expect = true;
    } else if (key == "expect-without-admit") {
      out.without_admit = parse_expectation(value, span);
    } else if (key == "theory") {
      out.packs = split_packs(value);
    } else if (key == "admit") {
      out.admitted.push_back(value);
    } else if (key == "description") {
      out.description = value;
    } else {
      fail(codes::kCaseHeader, span,
           fmt::format("unknown case header '{}'", key),
           {"known headers: description, theory, admit, expect, "
            "expect-without-admit"});
    }
  }
  if (!have_expect) {
    fail(codes::kCaseHeader, {}, "missing `// expect:` header",
         {"every corpus file starts with a header block naming its expected "
          "outcome"});
  }
  if (out.without_admit && out.admitted.empty()) {
    fail(codes::kCaseHeader, {},
         "`expect-without-admit` needs an `admit` header");
  }
  return out;
}

std::optional<std::string> unmet(const Expectation& expect,
                                 const std::vector<Diagnostic>& diagnostics,
                                 std::string_view content) {
  if (expect.verified) {
    if (diagnostics.empty()) return std::nullopt;
    const Diagnostic& d = diagnostics.front();
    return fmt::format("expected verified, got {} at {}:{}: {}", d.code,
                       d.span.line, d.span.column, d.message);
  }
  if (diagnostics.empty()) {
    return fmt::format("expected {}, but the file verified", expect.code);
  }
  const Diagnostic& d = diagnostics.front();
  if (d.code != expect.code) {
    return fmt::format("expected {}, got {}: {}", expect.code, d.code,
                       d.message);
  }
  if (expect.span_text.empty()) return std::nullopt;
  if (!d.span.valid()) {
    return fmt::format("{} has no source span to compare with \"{}\"", d.code,
                       expect.span_text);
  }
  for (std::size_t at = content.find(expect.span_text);
       at != std::string_view::npos;
       at = content.find(expect.span_text, at + 1)) {
    Span occurrence{at, expect.span_text.size(), 0, 0};
    if (occurrence.contains(d.span)) return std::nullopt;
  }
  return fmt::format("{} span \"{}\" is not inside \"{}\"", d.code,
                     content.substr(d.span.offset, d.span.length),
                     expect.span_text);
}

CaseOutcome run_case(std::string_view content, const std::string& path,
                     std::uint64_t fuel) {
  auto start = std::chrono::steady_clock::now();
  CaseOutcome out;
  out.spec.path = path;
  try {
    out.spec = parse_case_header(content, path);
  } catch (const KernelError& e) {
    out.diagnostics.push_back(e.diagnostic());
    out.detail = e.diagnostic().message;
    return out;
  }
  CheckOptions options{out.spec.packs, out.spec.admitted, fuel};
  CheckReport report = check_source(content, path, options);
  out.messages = report.messages;
  out.diagnostics = report.diagnostics;
  auto problem = unmet(out.spec.expect, report.diagnostics, content);
  if (!problem && out.spec.without_admit) {
    options.admitted.clear();
    CheckReport bare = check_source(content, path, options);
    problem = unmet(*out.spec.without_admit, bare.diagnostics, content);
    if (problem) *problem = "without admitted axioms: " + *problem;
  }
  out.pass = !problem;
  if (problem) out.detail = *problem;
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

CorpusReport run_corpus(const fs::path& dir, std::uint64_t fuel) {
  auto start = std::chrono::steady_clock::now();
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".dlp") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  CorpusReport report;
  for (const auto& file : files) {
    CaseOutcome c = run_case(read_file(file), file.generic_string(), fuel);
    (c.pass ? report.passed : report.failed) += 1;
    report.cases.push_back(std::move(c));
  }
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

nlohmann::json to_json(const CorpusReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : c.diagnostics) diags.push_back(to_json(d));
    nlohmann::json item = {{"path", c.spec.path},
                           {"outcome", c.pass ? "pass" : "fail"},
                           {"diagnostics", diags}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    cases.push_back(std::move(item));
  }
  return {{"status", report.ok() ? "pass" : "fail"},
          {"cases", cases},
          {"totals",
           {{"cases", report.cases.size()},
            {"passed", report.passed},
            {"failed", report.failed}}},
          {"wall_seconds", report.wall_seconds}};
}

}  // namespace dlk
