// Copyright 2026 The sgec-tools Authors.
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

#include "sgec/corpusio.h"

#include <unistd.h>

#include <filesystem>

#include <gtest/gtest.h>

#include "sgec/error.h"
#include "testing/oracles.h"

namespace sgec {
namespace {

using testing::Words;

class CorpusFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("sgec_corpusio_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path Write(const std::string& name,
                              const std::string& content) {
    const auto path = dir_ / name;
    WriteFile(path, content);
    return path;
  }

  std::filesystem::path dir_;
};

TEST_F(CorpusFileTest, EmptyFile) {
  EXPECT_TRUE(LoadCorpus(Write("empty.tsv", ""), NormConfig{}).empty());
}

TEST_F(CorpusFileTest, PreservesOrderAndNormalizes) {
  const Corpus c = LoadCorpus(
      Write("c.tsv", "b\tThe Cat.\n\na\tI\xE2\x80\x99" "d go\nz\t\n"),
      NormConfig{});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.ids(), (std::vector<std::string>{"b", "a", "z"}));
  EXPECT_EQ(c.Find("b")->tokens, Words({"the", "cat"}));
  EXPECT_EQ(c.Find("a")->tokens, Words({"i'd", "go"}));
  EXPECT_TRUE(c.Find("z")->tokens.empty());
  EXPECT_EQ(c.Find("missing"), nullptr);
}

TEST_F(CorpusFileTest, DuplicateIdNamesTheId) {
  try {
    LoadCorpus(Write("dup.tsv", "x\ta\ny\tb\nx\tc\n"), NormConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
}

TEST_F(CorpusFileTest, MissingTabNamesTheLine) {
  try {
    LoadCorpus(Write("bad.tsv", "x\ta\n\nno tab here\n"), NormConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST_F(CorpusFileTest, MissingFileIsIoError) {
  try {
    LoadCorpus(dir_ / "nope.tsv", NormConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST_F(CorpusFileTest, WriteThenLoadIsStable) {
  const std::string content = "a\tthe cat\nb\t\nc\ti'd go\n";
  const Corpus c = LoadCorpus(Write("w.tsv", content), NormConfig{});
  EXPECT_EQ(WriteCorpus(c.items()), content);
  const Corpus again = LoadCorpus(Write("w2.tsv", WriteCorpus(c.items())),
                                  NormConfig{});
  EXPECT_EQ(again.items(), c.items());
}

TEST_F(CorpusFileTest, ConfidenceDuplicates) {
  const auto path = Write("c.jsonl",
                          "{\"utt_id\":\"a\",\"tokens\":[]}\n"
                          "{\"utt_id\":\"a\",\"tokens\":[]}\n");
  EXPECT_THROW(LoadConfidence(path), Error);
}

Corpus MakeCorpus(std::vector<TokenSequence> items) {
  Corpus corpus;
  for (auto& seq : items) corpus.Add(std::move(seq));
  return corpus;
}

TEST(ValidateBundleTest, ConsistentBundle) {
  const Tokens x = Words({"the", "cat"});
  CorpusBundle bundle;
  bundle.flt_hyp = MakeCorpus({{"u1", x}, {"u2", x}});
  bundle.gec_ref = MakeCorpus({{"u2", x}, {"u1", x}});
  bundle.flt_conf = std::vector<ConfidenceEntry>{
      {"u1", {{"the", 0.5}, {"cat", 0.5}}}, {"u2", {{"The", 0.5}, {"cat.", 0.5}}}};
  EXPECT_TRUE(ValidateBundle(bundle, NormConfig{}).ok());
  EXPECT_TRUE(ValidateBundle(CorpusBundle{}, NormConfig{}).ok());
}

TEST(ValidateBundleTest, MissingIdIsReported) {
  const Tokens x = Words({"a"});
  CorpusBundle bundle;
  bundle.flt_hyp = MakeCorpus({{"u1", x}, {"u2", x}});
  bundle.flt_ref = MakeCorpus({{"u1", x}, {"u2", x}});
  bundle.gec_ref = MakeCorpus({{"u1", x}});
  const ValidationReport report = ValidateBundle(bundle, NormConfig{});
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].member, "gec_ref");
  EXPECT_EQ(report.issues[0].utt_id, "u2");
}

TEST(ValidateBundleTest, ConfidenceLengthMismatch) {
  CorpusBundle bundle;
  bundle.gec_hyp = MakeCorpus({{"u1", Words({"a", "b"})}});
  bundle.gec_conf = std::vector<ConfidenceEntry>{{"u1", {{"a", 0.5}}}};
  const ValidationReport report = ValidateBundle(bundle, NormConfig{});
  ASSERT_EQ(report.issues.size(), 1u);
  EXPECT_EQ(report.issues[0].member, "gec_conf");
  EXPECT_EQ(report.issues[0].utt_id, "u1");
  EXPECT_NE(report.ToString().find("u1"), std::string::npos);
}

}  // namespace
}  // namespace sgec
