// Copyright 2026 The USL-H Metric Authors
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
//

#include "cli.h"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "synthetic_dialogues.h"
#include "uslh/compose.h"
#include "uslh/text_io.h"

namespace uslh::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Stream(const std::string& text) {
  std::istringstream in(text);
  return ReadLines(in);
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() / "uslh_cli_test");
    fs::remove_all(*dir_);
    fs::create_directories(*dir_);
    const auto dialogues = synth::GenerateDialogues(120, 3);
    WriteTextFile(*dir_ / "corpus.txt", SerializeDailyDialog(dialogues));
    WriteTextFile(*dir_ / "emotions.txt", SerializeEmotions(dialogues));
    const auto eval = synth::GenerateEvalSet(dialogues, 12, 3, 4);
    WriteTextFile(*dir_ / "pairs.tsv", synth::SerializeEvalPairs(eval));
    WriteTextFile(*dir_ / "annotations.tsv", SerializeAnnotations(eval.annotations));
    WriteTextFile(*dir_ / "pool.txt", "go straight .\nthank you .\nstation the the\n");
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static std::string P(const std::string& name) { return (*dir_ / name).string(); }

  static void TrainAll() {
    const std::vector<std::string> corpus = {"--corpus", P("corpus.txt"), "--split", "a"};
    auto with = [&](std::vector<std::string> head, const std::vector<std::string>& tail) {
      head.insert(head.end(), tail.begin(), tail.end());
      return head;
    };
    ASSERT_EQ(Call(with({"build-data", "vup", "--out", P("vup.tsv")}, corpus)).code, 0);
    ASSERT_EQ(Call(with({"build-data", "nup", "--out", P("nup.tsv")}, corpus)).code, 0);
    ASSERT_EQ(Call(with({"build-data", "empathy", "--emotions", P("emotions.txt"), "--out",
                         P("emp.tsv")},
                        corpus))
                  .code,
              0);
    for (const char* task : {"vup", "nup", "empathy"}) {
      const std::string data = std::string(task == std::string("empathy") ? "emp" : task) + ".tsv";
      ASSERT_EQ(Call({"train", task, "--data", P(data), "--model-dir", P("models"), "--epochs", "2",
                      "--dim", "8"})
                    .code,
                0);
    }
    ASSERT_EQ(Call(with({"train", "lm", "--model-dir", P("models")}, corpus)).code, 0);
  }

  static fs::path* dir_;
};

fs::path* CliTest::dir_ = nullptr;

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(Call({}).code, 2);
  EXPECT_EQ(Call({"frobnicate"}).code, 2);
  EXPECT_EQ(Call({"build-data", "bogus", "--corpus", P("corpus.txt")}).code, 2);
  EXPECT_EQ(Call({"build-data", "vup"}).code, 2);
  EXPECT_EQ(Call({"train", "vup", "--model-dir", P("m"), "--epochs", "0"}).code, 2);
}

TEST_F(CliTest, HelpExitsWithZero) {
  const CliResult r = Call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("build-data"), std::string::npos);
}

TEST_F(CliTest, MissingFileNamesPath) {
  const CliResult r = Call({"build-data", "vup", "--corpus", P("absent.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("absent.txt"), std::string::npos);
}

TEST_F(CliTest, EmpathyDataNeedsEmotions) {
  EXPECT_EQ(Call({"build-data", "empathy", "--corpus", P("corpus.txt")}).code, 2);
}

TEST_F(CliTest, BuildDataIsDeterministicAndSplitsDiffer) {
  const CliResult a = Call({"build-data", "vup", "--corpus", P("corpus.txt"), "--split", "a"});
  const CliResult b = Call({"build-data", "vup", "--corpus", P("corpus.txt"), "--split", "a"});
  const CliResult c = Call({"build-data", "vup", "--corpus", P("corpus.txt"), "--split", "b"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_FALSE(a.out.empty());
}

TEST_F(CliTest, AgreementReportsEveryQuestion) {
  const CliResult r = Call({"agreement", "--annotations", P("annotations.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* q : {"understandable", "sensible", "specific", "overall"}) {
    EXPECT_NE(r.out.find(q), std::string::npos) << q;
  }
}

TEST_F(CliTest, ScoreRankEvaluateCalibrate) {
  TrainAll();
  const CliResult missing = Call({"score", "--model-dir", P("no-models"), "--pairs", P("pairs.tsv")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("no-models"), std::string::npos);

  const CliResult score = Call({"score", "--model-dir", P("models"), "--pairs", P("pairs.tsv"), "--out",
                          P("scores.tsv")});
  ASSERT_EQ(score.code, 0) << score.err;
  const auto lines = ReadLines(P("scores.tsv"));
  ASSERT_FALSE(lines.empty());
  for (const std::string& line : lines) {
    const auto f = SplitFields(line, '\t');
    ASSERT_EQ(f.size(), 3u) << line;
    EXPECT_EQ(f[2].size() - f[2].find('.'), 7u) << line;  // six decimals
  }
  EXPECT_TRUE(fs::exists(P("scores.tsv.weights")));

  // Reusing the persisted bounds reproduces the batch output.
  const CliResult again = Call({"score", "--model-dir", P("models"), "--pairs", P("pairs.tsv"),
                          "--weights", P("scores.tsv.weights"), "--normalizer", "file"});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, Join(lines, "\n") + "\n");

  const CliResult filtered = Call({"score", "--model-dir", P("models"), "--pairs", P("pairs.tsv"),
                             "--metrics", "usl_h,vup"});
  ASSERT_EQ(filtered.code, 0);
  for (const std::string& line : Stream(filtered.out)) {
    const std::string metric = SplitFields(line, '\t')[1];
    EXPECT_TRUE(metric == "usl_h" || metric == "vup") << metric;
  }

  const CliResult rank = Call({"rank", "--model-dir", P("models"), "--context", "where is the bank ?",
                         "--pool", P("pool.txt")});
  ASSERT_EQ(rank.code, 0) << rank.err;
  EXPECT_EQ(Stream(rank.out).size(), 3u);

  const CliResult eval = Call({"evaluate", "--scores", P("scores.tsv"), "--annotations",
                         P("annotations.tsv"), "--metrics", "usl_h,bleu2", "--human-ceiling"});
  ASSERT_EQ(eval.code, 0) << eval.err;
  const auto eval_lines = Stream(eval.out);
  ASSERT_EQ(eval_lines.size(), 5u);
  EXPECT_EQ(eval_lines[1].rfind("usl_h\t", 0), 0u);
  EXPECT_EQ(eval_lines[4].rfind("human_max\t", 0), 0u);

  const CliResult calibrate = Call({"calibrate", "--annotations", P("annotations.tsv"), "--scores",
                              P("scores.tsv"), "--out", P("weights.txt")});
  ASSERT_EQ(calibrate.code, 0) << calibrate.err;
  EXPECT_NE(calibrate.out.find("weights\tall"), std::string::npos);
  EXPECT_NE(calibrate.out.find("group\tG5"), std::string::npos);
  const WeightsFile wf = ParseWeightsFile(ReadLines(P("weights.txt")));
  EXPECT_NEAR(wf.weights.alpha[0] + wf.weights.alpha[1] + wf.weights.alpha[2], 1.0, 1e-12);

  const CliResult calibrated = Call({"score", "--model-dir", P("models"), "--pairs", P("pairs.tsv"),
                               "--weights", P("weights.txt")});
  EXPECT_EQ(calibrated.code, 0) << calibrated.err;
}

}  // namespace
}  // namespace uslh::cli
