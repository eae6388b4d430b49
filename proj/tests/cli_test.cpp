// Copyright 2026 The kareldbg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "karel/edit.hpp"
#include "karel/mutate.hpp"
#include "karel/tracemap.hpp"

namespace karel {
namespace {

struct RunResult {
  int code;
  std::string out;
};

// Runs the CLI through the shell with stderr discarded.
RunResult cli(const std::string& args) {
  const std::string cmd = std::string(KAREL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("karel_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

const std::string kWorld =
    R"({"h":2,"w":3,"robot":{"r":0,"c":0,"dir":"E"},"obstacles":[[1,2]],"markers":[[0,1,3]]})";

TEST_F(CliTest, GenDatasetIsReproducible) {
  ASSERT_EQ(cli("gen-dataset --n 4 --seed 3 --out " + path("a.jsonl")).code, 0);
  ASSERT_EQ(cli("gen-dataset --n 4 --seed 3 --out " + path("b.jsonl")).code, 0);
  const std::string a = read_file(path("a.jsonl"));
  EXPECT_EQ(a, read_file(path("b.jsonl")));
  std::istringstream is(a);
  EXPECT_EQ(read_tasks(is).size(), 4u);
}

TEST_F(CliTest, GenDatasetRejectsBadLimits) {
  EXPECT_NE(cli("gen-dataset --n 2 --max-depth 0").code, 0);
}

TEST_F(CliTest, MutateAndEvalRepair) {
  ASSERT_EQ(cli("gen-dataset --n 3 --seed 1 --out " + path("t.jsonl")).code, 0);
  ASSERT_EQ(cli("mutate-benchmark --tasks " + path("t.jsonl") +
                " --min-mutations 1 --max-mutations 2 --seed 2 --out " + path("r.jsonl"))
                .code,
            0);
  std::istringstream rs(read_file(path("r.jsonl")));
  EXPECT_EQ(read_repair_tasks(rs).size(), 6u);
  const RunResult r = cli("eval-repair --tasks " + path("r.jsonl") +
                          " --k 5 --beam 8 --out " + path("report.jsonl"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("edit_steps"), std::string::npos);
  std::istringstream report(read_file(path("report.jsonl")));
  std::string line, last;
  int lines = 0;
  while (std::getline(report, line)) {
    last = line;
    ++lines;
  }
  EXPECT_EQ(lines, 7);
  const Json summary = Json::parse(last)["summary"];
  EXPECT_EQ(summary["kind"], "repair");
  EXPECT_EQ(summary["config"]["k"], 5);
}

TEST_F(CliTest, EvalSynthWithEachSynthesizer) {
  ASSERT_EQ(cli("gen-dataset --n 2 --seed 4 --out " + path("t.jsonl")).code, 0);
  for (const char* synth : {"actions", "empty"}) {
    const RunResult r = cli("eval-synth --tasks " + path("t.jsonl") + " --synthesizer " +
                            synth + " --debugger none --k 2 --beam 4");
    EXPECT_EQ(r.code, 0) << synth;
    EXPECT_NE(r.out.find("\"summary\""), std::string::npos);
  }
  const RunResult plug = cli("eval-synth --tasks " + path("t.jsonl") +
                             " --synthesizer plugin --debugger plugin --plugin " +
                             quote(std::string(FAKE_PLUGIN_PATH) + " echo") + " --k 2");
  EXPECT_EQ(plug.code, 0);
  EXPECT_NE(plug.out.find("\"plugin_failures\":0"), std::string::npos);
}

TEST_F(CliTest, EvalRejectsMissingOrMalformedInput) {
  EXPECT_EQ(cli("eval-synth --tasks " + path("missing.jsonl")).code, 1);
  std::ofstream(path("bad.jsonl")) << "{not json\n";
  EXPECT_EQ(cli("eval-repair --tasks " + path("bad.jsonl")).code, 1);
}

TEST_F(CliTest, RunReportsCrashInBody) {
  const RunResult r = cli("run " + quote("def run { move move move }") + " --world " +
                          quote(kWorld));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "Crash(MoveBlocked, 3)");
  EXPECT_TRUE(j["final_state"].is_null());
  EXPECT_EQ(j["trace_length"], 3);
}

TEST_F(CliTest, RunReportsTimeoutInBody) {
  const RunResult r = cli("run " + quote("def run { while ( frontIsClear ) { } }") +
                          " --world " + quote(kWorld) + " --step-limit 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["status"], "Timeout(5)");
}

TEST_F(CliTest, RunEmptyProgramTraceHasOneEvent) {
  const RunResult r = cli("run " + quote("def run { }") + " --world " + quote(kWorld) +
                          " --trace");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "OK");
  ASSERT_EQ(j["events"].size(), 1u);
  EXPECT_TRUE(j["events"][0]["producing_token"].is_null());
  EXPECT_EQ(j["final_state"], Json::parse(kWorld));
}

TEST_F(CliTest, RunAlignmentMatchesLibrary) {
  const std::string prog = "def run { repeat ( 2 ) { move } }";
  std::ofstream(path("w.json")) << kWorld;
  const RunResult r = cli("run " + quote(prog) + " --world " + path("w.json") + " --align");
  ASSERT_EQ(r.code, 0);
  const WorldState w = world_from_json(Json::parse(kWorld));
  const std::vector<Trace> traces{execute(parse_text(prog), w, kDefaultStepLimit).trace};
  EXPECT_EQ(Json::parse(r.out)["alignment"],
            alignment_to_json(build_alignment(parse_text(prog), traces)));
}

TEST_F(CliTest, RunParseFailureExitsNonZero) {
  EXPECT_EQ(cli("run " + quote("def run { move") + " --world " + quote(kWorld)).code, 1);
  EXPECT_EQ(cli("run " + quote("def run { hop }") + " --world " + quote(kWorld)).code, 1);
  EXPECT_EQ(cli("run " + quote("def run { }") + " --world " + quote("{\"h\":1}")).code, 1);
}

TEST_F(CliTest, FmtPrettyAndFlat) {
  std::ofstream(path("p.txt")) << "def run { repeat ( 2 ) { move } }\ndef run { }\n";
  const RunResult pretty = cli("fmt " + path("p.txt"));
  ASSERT_EQ(pretty.code, 0);
  EXPECT_EQ(pretty.out,
            "def run {\n  repeat ( 2 ) {\n    move\n  }\n}\ndef run {\n}\n");
  const RunResult flat = cli("fmt --flat " + path("p.txt"));
  EXPECT_EQ(flat.out, "def run { repeat ( 2 ) { move } }\ndef run { }\n");
  std::ofstream(path("bad.txt")) << "def run { else }\n";
  EXPECT_EQ(cli("fmt " + path("bad.txt")).code, 1);
}

TEST_F(CliTest, EditApplyAndDiff) {
  const RunResult diff = cli("edit-diff " + quote("def run { move }") + " " +
                             quote("def run { move move }"));
  ASSERT_EQ(diff.code, 0);
  EXPECT_EQ(diff.out, "KEEP,KEEP,KEEP,INSERT[move],KEEP,KEEP\n");
  const RunResult applied = cli("edit-apply " + quote("def run { move }") + " " +
                                quote("KEEP,KEEP,KEEP,REPLACE[turnLeft],KEEP"));
  ASSERT_EQ(applied.code, 0);
  EXPECT_EQ(applied.out, "def run { turnLeft }\n");
  EXPECT_EQ(cli("edit-apply " + quote("def run { move }") + " KEEP").code, 1);
  EXPECT_EQ(cli("edit-apply " + quote("def run { move }") + " " + quote("KEEP,HOP")).code,
            1);
}

TEST_F(CliTest, UnknownSubcommandFails) { EXPECT_NE(cli("bogus").code, 0); }

}  // namespace
}  // namespace karel
