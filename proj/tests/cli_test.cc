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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dlk/corpus.h"

namespace dlk {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int exit_code = -1;
  std::string out;
};

std::string quote(const std::string& arg) {
  std::string q = "'";
  for (char c : arg) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  return q + "'";
}

// Runs the dlk binary; stdout only unless `merge` is set.
Outcome dlk(const std::vector<std::string>& args, bool merge = false) {
  std::string cmd = quote(DLK_BINARY);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += merge ? " 2>&1" : " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
    r.out.append(buf.data(), n);
  }
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& file) {
  return (fs::path(DLK_CORPUS_DIR) / file).string();
}

TEST(Check, Consistency) {
  Outcome r = dlk({"check", corpus("consistency.dlp"), "--theory", "nat"});
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("Verified: ConsistencyOfMathematics"), std::string::npos)
      << r.out;
}

TEST(Check, CurryIsRejectedWithSpan) {
  Outcome r = dlk({"check", corpus("curry.dlp")});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("error E021"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("curry.dlp:"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("^"), std::string::npos) << r.out;
}

TEST(Check, Wittgenstein) {
  std::string file = corpus("wittgenstein.dlp");
  Outcome admitted = dlk({"check", file, "--admit-unsound-axiom",
                      "P <=> not provable(P)"});
  EXPECT_EQ(admitted.exit_code, 0) << admitted.out;
  EXPECT_NE(admitted.out.find("Verified: WittgensteinContradiction"),
            std::string::npos)
      << admitted.out;
  Outcome bare = dlk({"check", file});
  EXPECT_EQ(bare.exit_code, 1) << bare.out;
}

TEST(Check, Json) {
  Outcome r = dlk({"check", corpus("consistency.dlp"), corpus("berry.dlp"), "--json"});
  EXPECT_EQ(r.exit_code, 1);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("status"), "fail");
  ASSERT_EQ(j.at("cases").size(), 2u);
  EXPECT_EQ(j["cases"][0].at("outcome"), "pass");
  EXPECT_TRUE(j["cases"][0].at("diagnostics").empty());
  EXPECT_EQ(j["cases"][1].at("outcome"), "fail");
  const auto& d = j["cases"][1].at("diagnostics").at(0);
  EXPECT_EQ(d.at("code"), "E023");
  EXPECT_TRUE(d.at("span").at("line").is_number());
  EXPECT_TRUE(d.at("notes").is_array());
}

TEST(Usage, ExitTwo) {
  EXPECT_EQ(dlk({"nosuchcmd"}).exit_code, 2);
  EXPECT_EQ(dlk({}).exit_code, 2);
  EXPECT_EQ(dlk({"check"}).exit_code, 2);
  EXPECT_EQ(dlk({"check", corpus("consistency.dlp"), "--bogus"}).exit_code, 2);
  EXPECT_EQ(dlk({"check", corpus("consistency.dlp"), "--fuel", "0"}).exit_code, 2);
  EXPECT_EQ(dlk({"check", "/nonexistent/file.dlp"}).exit_code, 2);
  EXPECT_EQ(dlk({"check", corpus("consistency.dlp"), "--theory", "topology"})
                .exit_code,
            2);
  EXPECT_EQ(dlk({"corpus", "--dir", "/nonexistent"}).exit_code, 2);
  Outcome usage = dlk({"nosuchcmd"}, true);
  EXPECT_NE(usage.out.find("--help"), std::string::npos) << usage.out;
}

TEST(Usage, Help) {
  Outcome r = dlk({"--help"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("check"), std::string::npos);
}

TEST(Corpus, RunsGreen) {
  Outcome r = dlk({"corpus", "--dir", DLK_CORPUS_DIR});
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("0 failed"), std::string::npos) << r.out;
  Outcome j = dlk({"corpus", "--dir", DLK_CORPUS_DIR, "--json"});
  EXPECT_EQ(j.exit_code, 0);
  nlohmann::json report = nlohmann::json::parse(j.out);
  EXPECT_EQ(report.at("status"), "pass");
  EXPECT_FALSE(report.at("cases").empty());
}

TEST(Corpus, FailingDirectoryExitsOne) {
  fs::path dir = fs::temp_directory_path() / "dlk_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "bad.dlp") << "// expect: verified\ndef X := X\n";
  EXPECT_EQ(dlk({"corpus", "--dir", dir.string()}).exit_code, 1);
  fs::remove_all(dir);
}

// `check` exits 0 exactly on the corpus cases expected to verify.
TEST(Check, ExitCodesAcrossCorpus) {
  for (const auto& entry : fs::directory_iterator(DLK_CORPUS_DIR)) {
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    CorpusCase c = parse_case_header(ss.str(), entry.path().string());
    std::vector<std::string> args{"check", entry.path().string()};
    std::string packs;
    for (const auto& p : c.packs) packs += (packs.empty() ? "" : ",") + p;
    if (!packs.empty()) {
      args.push_back("--theory");
      args.push_back(packs);
    }
    for (const auto& a : c.admitted) {
      args.push_back("--admit-unsound-axiom");
      args.push_back(a);
    }
    Outcome r = dlk(args);
    EXPECT_EQ(r.exit_code, c.expect.verified ? 0 : 1) << entry.path() << r.out;
    if (!c.expect.verified) {
      EXPECT_NE(r.out.find("error " + c.expect.code), std::string::npos)
          << r.out;
    }
  }
}

TEST(Axioms, ListsPacks) {
  Outcome nat = dlk({"axioms", "--theory", "nat"});
  EXPECT_EQ(nat.exit_code, 0);
  int axioms = 0;
  std::istringstream lines(nat.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("axiom ", 0) == 0) ++axioms;
  }
  EXPECT_EQ(axioms, 5);
  EXPECT_NE(nat.out.find("const Successor : Fun(Nat, Nat)"), std::string::npos);
  EXPECT_EQ(nat.out.find("Consistent"), std::string::npos);

  Outcome math = dlk({"axioms"});
  EXPECT_NE(math.out.find("def Consistent"), std::string::npos) << math.out;

  Outcome j = dlk({"axioms", "--theory", "sets,reals", "--json"});
  EXPECT_EQ(j.exit_code, 0);
  nlohmann::json list = nlohmann::json::parse(j.out);
  int count = 0;
  for (const auto& item : list) count += item.at("kind") == "axiom";
  EXPECT_EQ(count, 18);
}

TEST(Parse, DumpAst) {
  Outcome r = dlk({"parse", corpus("consistency.dlp"), "--dump-ast"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("Declaration @4:1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Step 3 depth=1 obtain by exists_elim"), std::string::npos)
      << r.out;
  Outcome plain = dlk({"parse", corpus("consistency.dlp")});
  EXPECT_NE(plain.out.find("proof ConsistencyOfMathematics : Consistent"),
            std::string::npos)
      << plain.out;
}

TEST(Parse, SyntaxErrorExitsOne) {
  fs::path file = fs::temp_directory_path() / "dlk_cli_syntax.dlp";
  std::ofstream(file) << "proof X : (P /\\ \n";
  Outcome r = dlk({"parse", file.string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("E001"), std::string::npos) << r.out;
  fs::remove(file);
}

}  // namespace
}  // namespace dlk
