// Copyright 2026 The odqa Authors.
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
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace odqa {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("odqa_cli_" + std::to_string(::getpid()) + "_" +
                                        info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  Result run(const std::string& args) const {
    const fs::path out = path("stdout.txt"), err = path("stderr.txt");
    const std::string cmd = std::string("\"") + ODQA_CLI_PATH + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string q(const std::string& name) const { return "\"" + path(name).string() + "\""; }

  fs::path dir_;
};

TEST_F(CliTest, FullFlow) {
  const auto world = testing::make_world(500, 40, 12);
  spit(path("psgs.tsv"), testing::to_passage_tsv(world.store));
  spit(path("sentences.jsonl"), testing::join_lines(world.sentence_lines));

  auto r = run("ingest --passages " + q("psgs.tsv") + " --out " + q("store.bin"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["passages"], 500);

  r = run("index --store " + q("store.bin") + " --out " + q("index.bin"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["k1"], 1.2);

  r = run("stats --store " + q("store.bin") + " --index " + q("index.bin"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["index"]["doc_count"], 500);

  r = run("retrieve --index " + q("index.bin") + " --store " + q("store.bin") +
          " --k 5 --query \"" + world.facts[0].subject + " " +
          testing::filler_vocabulary()[0] + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream hits(r.out);
  std::size_t n_hits = 0;
  for (std::string line; std::getline(hits, line); ++n_hits) {
    EXPECT_EQ(json::parse(line)["rank"], n_hits + 1);
  }
  EXPECT_EQ(n_hits, 5u);

  const std::string synth = "synthesize --index " + q("index.bin") + " --store " +
                            q("store.bin") + " --sentences " + q("sentences.jsonl");
  r = run("--workers 1 " + synth + " --out " + q("a.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  r = run("--workers 4 " + synth + " --out " + q("b.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
  const auto stats = json::parse(slurp(path("a.jsonl.stats.json")));
  EXPECT_EQ(stats["input"], 40);
  EXPECT_EQ(stats["emitted"].get<int>() + stats["discarded_total"].get<int>(), 40);
  EXPECT_EQ(stats["config"]["strategy"], "our_method");
  EXPECT_FALSE(fs::exists(path("a.jsonl.partial")));

  // The sidecar doubles as a config file.
  r = run("--config " + q("a.jsonl.stats.json") + " " + synth + " --out " + q("c.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("c.jsonl")));

  r = run("predict --samples " + q("a.jsonl") + " --out " + q("pred.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  std::string gold;
  std::istringstream samples(slurp(path("a.jsonl")));
  for (std::string line; std::getline(samples, line);) {
    const auto j = json::parse(line);
    gold += json({{"question", j["question"]}, {"answers", j["answers"]}}).dump() + "\n";
  }
  spit(path("gold.jsonl"), gold);
  r = run("evaluate --gold " + q("gold.jsonl") + " --pred " + q("pred.jsonl"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto result = json::parse(r.out);
  EXPECT_EQ(result["n"], stats["emitted"]);
  EXPECT_GE(result["em"].get<double>(), 0.0);
  EXPECT_LE(result["em"].get<double>(), 1.0);
}

TEST_F(CliTest, MissingPredictionsExitOne) {
  spit(path("gold.jsonl"),
       "{\"question\": \"a\", \"answers\": [\"x\"]}\n{\"question\": \"b\", \"answers\": [\"y\"]}\n");
  spit(path("pred.jsonl"), "{\"id\": \"1\", \"prediction\": \"x\"}\n");
  const auto r = run("evaluate --gold " + q("gold.jsonl") + " --pred " + q("pred.jsonl"));
  EXPECT_EQ(r.code, 1);
  const auto err = json::parse(r.err);
  EXPECT_EQ(err["error"]["kind"], "input");
  EXPECT_EQ(err["error"]["missing_ids"], json::array({"2"}));
}

TEST_F(CliTest, DuplicatePassageIdLeavesNoOutput) {
  spit(path("psgs.tsv"), "id\ttext\ttitle\n7\ta\tA\n7\tb\tB\n");
  const auto r = run("ingest --passages " + q("psgs.tsv") + " --out " + q("store.bin"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("duplicate passage id 7"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("store.bin")));
  EXPECT_FALSE(fs::exists(path("store.bin.partial")));
}

TEST_F(CliTest, FailedSynthesisRemovesPartialOutput) {
  const auto world = testing::make_world(200, 20, 13);
  spit(path("psgs.tsv"), testing::to_passage_tsv(world.store));
  spit(path("sentences.jsonl"), world.sentence_lines[0] + "\n{\"text\": 5}\n");
  ASSERT_EQ(run("ingest --passages " + q("psgs.tsv") + " --out " + q("store.bin")).code, 0);
  ASSERT_EQ(run("index --store " + q("store.bin") + " --out " + q("index.bin")).code, 0);
  const auto r = run("synthesize --index " + q("index.bin") + " --store " + q("store.bin") +
                     " --sentences " + q("sentences.jsonl") + " --out " + q("out.jsonl"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(json::parse(r.err)["error"]["message"].get<std::string>().find(":2"),
            std::string::npos)
      << r.err;
  EXPECT_FALSE(fs::exists(path("out.jsonl")));
  EXPECT_FALSE(fs::exists(path("out.jsonl.partial")));
  EXPECT_FALSE(fs::exists(path("out.jsonl.stats.json.partial")));
}

TEST_F(CliTest, BadArgumentsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  spit(path("psgs.tsv"), "id\ttext\ttitle\n1\ta b\tA\n");
  ASSERT_EQ(run("ingest --passages " + q("psgs.tsv") + " --out " + q("store.bin")).code, 0);
  EXPECT_EQ(run("--set bm25.k9=1 index --store " + q("store.bin") + " --out " + q("i.bin")).code,
            1);
  EXPECT_EQ(run("index --store " + q("missing.bin") + " --out " + q("i.bin")).code, 1);
  EXPECT_EQ(run("index --store " + q("psgs.tsv") + " --out " + q("i.bin")).code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
}  // namespace odqa
