// Copyright 2026 The paramfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "paramfuzz/targets.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "paramfuzz/generator.h"
#include "paramfuzz/mutation.h"
#include "test_util.h"

namespace paramfuzz {
namespace {

RunOutcome Exec(const Target& target, std::string_view input) {
  CoverageRecorder rec;
  return target.Execute(input, rec);
}

// A target whose behavior is chosen by the input, for the harness contract.
class ScriptedTarget : public Target {
 public:
  std::string_view name() const override { return "scripted"; }
  const PointTable& points() const override { return table_; }
  const std::vector<PlantedBug>& planted_bugs() const override { return bugs_; }
  bool AcceptsSyntax(std::string_view input) const override { return input != "syntax"; }

 protected:
  void Run(std::string_view input, CoverageRecorder& rec) const override {
    rec.Record(3);
    if (input == "syntax") throw SyntaxRejection("bad token");
    rec.Record(kSemanticBase + 1);
    if (input == "semantic") throw SemanticRejection("bad model");
    if (input == "fault") throw TargetFault("Boom", "it broke", "Here::There");
    if (input == "range") throw std::out_of_range("index 9");
  }

 private:
  PointTable table_{4, 2, 0};
  std::vector<PlantedBug> bugs_;
};

TEST(Harness, ClassifiesEveryOutcome) {
  ScriptedTarget t;
  RunOutcome out = Exec(t, "ok");
  EXPECT_EQ(out.result, Result::kValid);
  EXPECT_FALSE(out.failure);

  out = Exec(t, "syntax");
  EXPECT_EQ(out.result, Result::kInvalid);
  EXPECT_EQ(out.rejected_by, Stage::kSyntax);
  EXPECT_EQ(out.coverage, CoverageSet({3}));

  out = Exec(t, "semantic");
  EXPECT_EQ(out.result, Result::kInvalid);
  EXPECT_EQ(out.rejected_by, Stage::kSemantic);

  out = Exec(t, "fault");
  EXPECT_EQ(out.result, Result::kFailure);
  EXPECT_EQ(*out.failure, (FailureKey{"Boom", "it broke", "Here::There"}));

  out = Exec(t, "range");
  EXPECT_EQ(out.result, Result::kFailure);
  EXPECT_EQ(out.failure->error_type, "std::out_of_range");
  EXPECT_EQ(out.failure->message, "index 9");
  EXPECT_EQ(out.failure->location, "point:0x4001");
}

TEST(FailureKey, HashIsStableAndSeparatesFields) {
  const FailureKey a{"T", "m", "l"};
  EXPECT_EQ(a.Hash(), FailureKey({"T", "m", "l"}).Hash());
  EXPECT_EQ(a.Hash().size(), 16u);
  EXPECT_NE(a.Hash(), FailureKey({"Tm", "", "l"}).Hash());
  EXPECT_NE(a.Hash(), FailureKey({"T", "m", "l2"}).Hash());
  EXPECT_EQ(ParseResult(ResultName(Result::kInvalid)), Result::kInvalid);
  EXPECT_THROW(ParseResult("MAYBE"), std::invalid_argument);
}

TEST(MiniXml, UnmatchedTagsAreSyntaxErrors) {
  auto t = MakeMiniXmlTarget();
  const RunOutcome out = Exec(*t, "<a b>ac&#84;a>");
  EXPECT_EQ(out.result, Result::kInvalid);
  EXPECT_EQ(out.rejected_by, Stage::kSyntax);
  EXPECT_FALSE(t->AcceptsSyntax("<a b>ac&#84;a>"));
}

TEST(MiniXml, WrongRootIsASemanticError) {
  auto t = MakeMiniXmlTarget();
  const RunOutcome out = Exec(*t, "<build />");
  EXPECT_EQ(out.result, Result::kInvalid);
  EXPECT_EQ(out.rejected_by, Stage::kSemantic);
}

TEST(MiniXml, ValidProjectRunsToCompletion) {
  auto t = MakeMiniXmlTarget();
  const std::string doc =
      "<project name=\"p\" default=\"b\">"
      "<property name=\"a\" value=\"1\" />"
      "<path id=\"cp\"><pathelement location=\"lib\" /></path>"
      "<target name=\"a\"><echo message=\"${a}\" /></target>"
      "<target name=\"b\" depends=\"a\"><mkdir dir=\"out\" /></target>"
      "</project>";
  const RunOutcome out = Exec(*t, doc);
  EXPECT_EQ(out.result, Result::kValid) << out.detail;
  EXPECT_GT(out.coverage.CountRegion(Region::kSemantic), 0u);
}

TEST(MiniXml, SemanticRulesReject) {
  auto t = MakeMiniXmlTarget();
  for (const char* doc : {
           "<project><property value=\"x\" /></project>",
           "<project><target name=\"a\" /><target name=\"a\" /></project>",
           "<project default=\"nope\" />",
           "<project><path refid=\"missing\" /></project>",
           "<project><target name=\"a\" depends=\"b\" /></project>",
       }) {
    const RunOutcome out = Exec(*t, doc);
    EXPECT_EQ(out.result, Result::kInvalid) << doc;
    EXPECT_EQ(out.rejected_by, Stage::kSemantic) << doc;
  }
}

TEST(MiniScript, Examples) {
  auto t = MakeMiniScriptTarget();
  EXPECT_EQ(Exec(*t, "").result, Result::kValid);
  EXPECT_EQ(Exec(*t, "var l_0 = 1; while (l_0) { l_0 = 0; }").result, Result::kValid);
  const RunOutcome syntax = Exec(*t, "var = ;");
  EXPECT_EQ(syntax.result, Result::kInvalid);
  EXPECT_EQ(syntax.rejected_by, Stage::kSyntax);
  for (const char* program : {"break;", "return 1;", "(function(l_0, l_0) { });", "l_2;",
                              "while (true) { } continue;"}) {
    const RunOutcome out = Exec(*t, program);
    EXPECT_EQ(out.result, Result::kInvalid) << program;
    EXPECT_EQ(out.rejected_by, Stage::kSemantic) << program;
  }
}

TEST(MiniScript, UndeclaredArrowBodyFaultsBeforeTheUndeclaredCheck) {
  auto t = MakeMiniScriptTarget();
  const RunOutcome out = Exec(*t, "var l_0 = ((l_1) => l_3);");
  EXPECT_EQ(out.result, Result::kFailure);
  EXPECT_EQ(out.failure, t->planted_bugs()[0].key);
  // Declared body or parameter body: no fault.
  EXPECT_EQ(Exec(*t, "var l_3; ((l_1) => l_3);").result, Result::kValid);
  EXPECT_EQ(Exec(*t, "((l_1) => l_1);").result, Result::kValid);
}

TEST(MiniScript, WarningsAreValidUnlessConfigured) {
  auto lenient = MakeMiniScriptTarget();
  auto strict = MakeMiniScriptTarget({.warnings_as_invalid = true});
  for (const char* program : {"(1 / 0);", "(null)[1];"}) {
    EXPECT_EQ(Exec(*lenient, program).result, Result::kValid) << program;
    EXPECT_EQ(Exec(*strict, program).result, Result::kInvalid) << program;
  }
}

class BuiltinTarget : public ::testing::TestWithParam<std::string> {};

TEST_P(BuiltinTarget, EachWitnessTriggersExactlyItsOwnBug) {
  auto t = MakeTarget(GetParam());
  const auto& bugs = t->planted_bugs();
  ASSERT_GE(bugs.size(), 3u);
  for (size_t i = 0; i < bugs.size(); ++i) {
    const RunOutcome out = Exec(*t, bugs[i].witness);
    ASSERT_EQ(out.result, Result::kFailure) << bugs[i].witness;
    EXPECT_EQ(*out.failure, bugs[i].key);
    for (size_t j = 0; j < bugs.size(); ++j) {
      if (j != i) EXPECT_NE(bugs[j].key, bugs[i].key);
    }
  }
}

TEST_P(BuiltinTarget, DeclaresEnoughSemanticPointsAndOnlyRecordsDeclaredOnes) {
  auto t = MakeTarget(GetParam());
  const PointTable& table = t->points();
  EXPECT_GE(table.semantic_points, GetParam() == "minixml" ? 60u : 80u);
  auto gen = MakeGenerator(DefaultGeneratorFor(GetParam()));
  ExtensionStream stream(8);
  for (int i = 0; i < 3000; ++i) {
    ParameterSequence s;
    ParametricSource src(s, &stream);
    const RunOutcome out = Exec(*t, gen->Generate(src).text);
    for (PointId id : out.coverage.ids()) ASSERT_TRUE(table.Declares(id)) << id;
  }
}

TEST_P(BuiltinTarget, SyntaxRejectedInputsRecordNoSemanticPoints) {
  auto t = MakeTarget(GetParam());
  auto gen = MakeGenerator(DefaultGeneratorFor(GetParam()));
  ExtensionStream stream(9);
  Mutator mutator({4, 4, 9});
  int rejected = 0;
  for (int i = 0; i < 5000; ++i) {
    ParameterSequence s;
    ParametricSource src(s, &stream);
    const std::string text = gen->Generate(src).text;
    const Bytes raw = mutator.Mutate(Bytes(text.begin(), text.end()));
    const RunOutcome out = Exec(*t, std::string(raw.begin(), raw.end()));
    if (out.rejected_by != Stage::kSyntax) continue;
    ++rejected;
    EXPECT_EQ(out.coverage.CountRegion(Region::kSemantic), 0u);
  }
  EXPECT_GT(rejected, 100);
}

TEST_P(BuiltinTarget, ExecutionIsDeterministic) {
  auto t = MakeTarget(GetParam());
  auto gen = MakeGenerator(DefaultGeneratorFor(GetParam()));
  ExtensionStream stream(10);
  CoverageRecorder rec;
  for (int i = 0; i < 500; ++i) {
    ParameterSequence s;
    ParametricSource src(s, &stream);
    const std::string text = gen->Generate(src).text;
    EXPECT_EQ(t->Execute(text, rec), Exec(*t, text));
  }
}

INSTANTIATE_TEST_SUITE_P(All, BuiltinTarget, ::testing::Values("minixml", "miniscript"));

TEST(Targets, FactoryNames) {
  EXPECT_EQ(TargetNames(), (std::vector<std::string>{"minixml", "miniscript"}));
  EXPECT_EQ(DefaultGeneratorFor("minixml"), "xml");
  EXPECT_EQ(DefaultGeneratorFor("miniscript"), "script");
  EXPECT_EQ(MakeTarget("miniscript")->name(), "miniscript");
  EXPECT_THROW(MakeTarget("bcel"), std::invalid_argument);
}

}  // namespace
}  // namespace paramfuzz
