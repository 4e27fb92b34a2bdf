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


#include "paramfuzz/generator.h"

#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <random>
#include <set>

#include "paramfuzz/mutation.h"
#include "paramfuzz/script_generator.h"
#include "paramfuzz/targets.h"
#include "paramfuzz/xml_generator.h"
#include "test_util.h"

namespace paramfuzz {
namespace {

using testing::GenerateStrict;
using testing::Octets;
using testing::WorkedExampleConfig;
using testing::WorkedExampleTrace;

TEST(XmlGenerator, WorkedExampleBaseDocument) {
  XmlGenerator gen(WorkedExampleConfig());
  EXPECT_EQ(GenerateStrict(gen, WorkedExampleTrace()), "<foo><bar>Hello</bar><baz /></foo>");
}

TEST(XmlGenerator, MutatingANameCharacterRenamesBothTags) {
  XmlGenerator gen(WorkedExampleConfig());
  Bytes trace = WorkedExampleTrace();
  trace[1] = 0x57;
  EXPECT_EQ(GenerateStrict(gen, trace), "<Woo><bar>Hello</bar><baz /></Woo>");
}

TEST(XmlGenerator, MutatingTheChildCountDropsASubtree) {
  XmlGenerator gen(WorkedExampleConfig());
  Bytes trace = WorkedExampleTrace();
  trace[4] = 1;
  // The octets that described <baz /> are now read as the root's text flag
  // and ignored after it.
  EXPECT_EQ(GenerateStrict(gen, trace), "<foo><bar>Hello</bar></foo>");
}

TEST(XmlGenerator, FlippedFlagExtendsWithAppendedOctets) {
  XmlGenerator gen(WorkedExampleConfig());
  Bytes trace = WorkedExampleTrace();
  trace[22] = 1;      // baz now has text
  trace.resize(23);   // ...whose length and content are not stored
  // Pick the campaign seed whose first appended octets read as length 1,
  // 'H' and no root text.
  uint64_t seed = 0;
  for (;; ++seed) {
    ExtensionStream probe(seed);
    const uint8_t len = probe.Next(), ch = probe.Next(), flag = probe.Next();
    if (len % 9 == 0 && ch == 0x48 && (flag & 1) == 0) break;
  }
  ExtensionStream stream(seed);
  ParameterSequence sequence{trace};
  ParametricSource source(sequence, &stream);
  EXPECT_EQ(gen.Generate(source).text, "<foo><bar>Hello</bar><baz>H</baz></foo>");
  EXPECT_EQ(source.extended(), 3u);
  ASSERT_EQ(sequence.bytes.size(), 26u);
  EXPECT_EQ(sequence.bytes[24], 0x48);
  // The grown sequence replays without the stream.
  EXPECT_EQ(GenerateStrict(gen, sequence.bytes), "<foo><bar>Hello</bar><baz>H</baz></foo>");
}

TEST(XmlGenerator, EmptySequenceYieldsAWellFormedDocument) {
  auto target = MakeMiniXmlTarget();
  auto gen = MakeGenerator("xml");
  for (uint64_t seed = 0; seed < 50; ++seed) {
    ExtensionStream stream(seed);
    ParameterSequence sequence;
    ParametricSource source(sequence, &stream);
    const std::string text = gen->Generate(source).text;
    EXPECT_TRUE(target->AcceptsSyntax(text)) << text;
    EXPECT_EQ(GenerateStrict(*gen, sequence.bytes), text);
  }
}

TEST(XmlGenerator, EscapesMarkupInTextAndAttributes) {
  XmlElement e{"a", {{"k", "x\"<&>"}}, {}, true, "1 < 2 & 3 > 0"};
  EXPECT_EQ(SerializeXml(e), "<a k=\"x&quot;&lt;&amp;&gt;\">1 &lt; 2 &amp; 3 &gt; 0</a>");
}

TEST(XmlGenerator, AtMostTwoAttributesAndBoundedChildren) {
  auto gen = XmlGenerator(DefaultXmlConfig());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    ExtensionStream stream(i);
    ParameterSequence sequence{testing::RandomBytes(rng, 64)};
    ParametricSource source(sequence, &stream);
    const XmlElement root = gen.GenerateDocument(source);
    std::function<int(const XmlElement&)> depth = [&](const XmlElement& e) {
      EXPECT_LE(e.attributes.size(), 2u);
      EXPECT_LE(e.children.size(), 3u);
      int d = 0;
      for (const auto& c : e.children) d = std::max(d, depth(c));
      return d + 1;
    };
    EXPECT_LE(depth(root), 5);
  }
}

TEST(GenString, LengthAnnotationOfTheWorkedExample) {
  GeneratorConfig config = WorkedExampleConfig();
  config.max_str_len = 16;
  ParameterSequence s{Octets({0x02, 'a', 'b', 'c', 'd'})};
  ParametricSource src(s, nullptr);
  EXPECT_EQ(GenString(src, config), "abc");
  EXPECT_EQ(src.consumed(), 4u);
}

TEST(GenString, MaxLengthTwoAlwaysGivesOneCharacter) {
  GeneratorConfig config = WorkedExampleConfig();
  config.max_str_len = 2;
  for (int n = 0; n < 256; ++n) {
    ParameterSequence s{Octets({n, 'q'})};
    ParametricSource src(s, nullptr);
    EXPECT_EQ(GenString(src, config).size(), 1u);
  }
}

TEST(GenString, FirstOctetSweepCoversExactlyTheLengthRange) {
  for (int max_len : {2, 3, 10, 16, 40}) {
    GeneratorConfig config = WorkedExampleConfig();
    config.max_str_len = max_len;
    std::set<size_t> lengths;
    for (int n = 0; n < 256; ++n) {
      Bytes bytes(64, 'x');
      bytes[0] = static_cast<uint8_t>(n);
      ParameterSequence s{bytes};
      ParametricSource src(s, nullptr);
      lengths.insert(GenString(src, config).size());
    }
    EXPECT_EQ(*lengths.begin(), 1u);
    EXPECT_EQ(*lengths.rbegin(), static_cast<size_t>(max_len - 1));
    EXPECT_EQ(lengths.size(), static_cast<size_t>(max_len - 1));
  }
}

TEST(GenString, MapsEveryOctetIntoItsAlphabet) {
  GeneratorConfig config = WorkedExampleConfig();
  for (int n = 0; n < 256; ++n) {
    {
      ParameterSequence s{Octets({0, n})};
      ParametricSource src(s, nullptr);
      const std::string str = GenString(src, config);
      ASSERT_EQ(str.size(), 1u);
      EXPECT_TRUE(IsIdentifierChar(str[0])) << n;
      if (IsIdentifierChar(static_cast<unsigned char>(n))) EXPECT_EQ(str[0], n);
    }
    {
      ParameterSequence s{Octets({0, n})};
      ParametricSource src(s, nullptr);
      const std::string str = GenText(src, config);
      EXPECT_TRUE(IsPrintableChar(str[0])) << n;
      if (IsPrintableChar(static_cast<unsigned char>(n))) EXPECT_EQ(str[0], n);
    }
  }
}

TEST(ScriptGenerator, AllZeroTraceIsTheFirstProduction) {
  auto gen = MakeGenerator("script");
  EXPECT_EQ(GenerateStrict(*gen, Bytes(64, 0)), "0;");
}

TEST(ScriptGenerator, ReachesTheDeadCodeDeclarationShape) {
  // Random sampling finds a program where a var follows a break inside a
  // loop; the target's dead-code pass must report it.
  auto gen = MakeGenerator("script");
  auto target = MakeMiniScriptTarget();
  const FailureKey want = target->planted_bugs()[2].key;
  ExtensionStream stream(1);
  CoverageRecorder rec;
  bool found = false;
  for (int i = 0; i < 200000 && !found; ++i) {
    ParameterSequence s;
    ParametricSource src(s, &stream);
    const std::string text = gen->Generate(src).text;
    const RunOutcome out = target->Execute(text, rec);
    if (out.failure == want) {
      found = true;
      EXPECT_NE(text.find("while"), std::string::npos) << text;
      EXPECT_NE(text.find("break;"), std::string::npos) << text;
      EXPECT_NE(text.find("var "), std::string::npos) << text;
    }
  }
  EXPECT_TRUE(found);
}

class ValidityByConstruction : public ::testing::TestWithParam<std::string> {};

TEST_P(ValidityByConstruction, RandomAndMutatedSequencesPassTheSyntaxStage) {
  const std::string target_name = GetParam();
  auto target = MakeTarget(target_name);
  auto gen = MakeGenerator(DefaultGeneratorFor(target_name));
  ExtensionStream stream(11);
  Mutator mutator({4, 4, 12});
  std::vector<Bytes> pool;
  for (int i = 0; i < 2000; ++i) {
    ParameterSequence s;
    ParametricSource src(s, &stream);
    const std::string text = gen->Generate(src).text;
    ASSERT_TRUE(target->AcceptsSyntax(text)) << text;
    pool.push_back(s.bytes);
  }
  for (int i = 0; i < 2000; ++i) {
    ParameterSequence s{mutator.Mutate(pool[i % pool.size()])};
    ParametricSource src(s, &stream);
    const std::string text = gen->Generate(src).text;
    ASSERT_TRUE(target->AcceptsSyntax(text)) << text;
  }
}

TEST_P(ValidityByConstruction, SingleOctetMutationsStayValid) {
  const std::string target_name = GetParam();
  auto target = MakeTarget(target_name);
  auto gen = MakeGenerator(DefaultGeneratorFor(target_name));
  ExtensionStream stream(12);
  std::mt19937_64 rng(12);
  int changed = 0;
  for (int i = 0; i < 500; ++i) {
    ParameterSequence s;
    ParametricSource src(s, &stream);
    const std::string before = gen->Generate(src).text;
    Bytes bytes = s.bytes;
    bytes[rng() % bytes.size()] ^= static_cast<uint8_t>(1 + rng() % 255);
    ParameterSequence m{bytes};
    ParametricSource msrc(m, &stream);
    const std::string after = gen->Generate(msrc).text;
    EXPECT_TRUE(target->AcceptsSyntax(after)) << after;
    changed += before != after;
  }
  EXPECT_GT(changed, 0);
}

INSTANTIATE_TEST_SUITE_P(BuiltinPairs, ValidityByConstruction,
                         ::testing::Values("minixml", "miniscript"));

TEST(Generator, ConfigValidationAndFingerprint) {
  GeneratorConfig bad = WorkedExampleConfig();
  bad.max_depth = 0;
  EXPECT_THROW(XmlGenerator{bad}, GeneratorDefinitionError);
  auto a = MakeGenerator("xml");
  auto b = MakeGenerator("xml", WorkedExampleConfig());
  auto c = MakeGenerator("script");
  EXPECT_NE(a->Fingerprint(), b->Fingerprint());
  EXPECT_NE(a->Fingerprint(), c->Fingerprint());
  EXPECT_EQ(a->Fingerprint(), MakeGenerator("xml")->Fingerprint());
  EXPECT_THROW(MakeGenerator("json"), std::invalid_argument);
}

TEST(Generator, LoadsLiteralPools) {
  const auto dir = testing::ScratchDir("pool");
  std::ofstream(dir / "pool.txt") << "alpha\n\nbeta\r\ngamma\n";
  EXPECT_EQ(LoadLiteralPool((dir / "pool.txt").string()),
            (std::vector<std::string>{"alpha", "beta", "gamma"}));
  EXPECT_THROW(LoadLiteralPool((dir / "missing.txt").string()), std::runtime_error);
}

}  // namespace
}  // namespace paramfuzz
