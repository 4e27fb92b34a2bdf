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


#include "paramfuzz/param.h"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "paramfuzz/hash.h"
#include "test_util.h"

namespace paramfuzz {
namespace {

using testing::Octets;

int64_t DecodeInt(uint8_t octet, int64_t a, int64_t b) {
  ParameterSequence s{{octet}};
  ParametricSource src(s, nullptr);
  const int64_t v = src.NextIntInRange(a, b);
  EXPECT_EQ(src.consumed(), 1u);
  return v;
}

TEST(NextIntInRange, LengthAnnotationOfTheWorkedExample) { EXPECT_EQ(DecodeInt(0b00000010, 1, 16), 3); }

TEST(NextIntInRange, SingletonRangeForcesLowerBound) { EXPECT_EQ(DecodeInt(0xFF, 5, 6), 5); }

TEST(NextIntInRange, AllOctetsMatchModulusTable) {
  // Table built by repeated subtraction, not by the % operator.
  for (int n = 0; n < 256; ++n) {
    int r = n;
    while (r >= 7) r -= 7;
    EXPECT_EQ(DecodeInt(static_cast<uint8_t>(n), 0, 7), r) << "octet " << n;
  }
}

TEST(NextIntInRange, NegativeBounds) {
  EXPECT_EQ(DecodeInt(0, -3, 2), -3);
  EXPECT_EQ(DecodeInt(7, -3, 2), -1);
}

TEST(NextIntInRange, EmptyRangeIsAGeneratorDefinitionError) {
  ParameterSequence s{{1}};
  ParametricSource src(s, nullptr);
  EXPECT_THROW(src.NextIntInRange(4, 4), GeneratorDefinitionError);
  EXPECT_THROW(src.NextIntInRange(5, 4), GeneratorDefinitionError);
  EXPECT_EQ(src.consumed(), 0u);
}

TEST(NextIntInRange, WideRangesReadFourOctetsLittleEndian) {
  ParameterSequence s{Octets({0x01, 0x02, 0x03, 0x04, 0xFF})};
  ParametricSource src(s, nullptr);
  const int64_t v = src.NextIntInRange(0, 100000);
  EXPECT_EQ(v, 0x04030201 % 100000);
  EXPECT_EQ(src.consumed(), 4u);
  EXPECT_EQ(src.NextByte(), 0xFF);
}

TEST(NextBool, LeastSignificantBit) {
  for (auto [octet, want] : std::vector<std::pair<int, bool>>{{0b0, false}, {0b1, true}, {0b11111110, false}}) {
    ParameterSequence s{{static_cast<uint8_t>(octet)}};
    ParametricSource src(s, nullptr);
    EXPECT_EQ(src.NextBool(), want) << octet;
    EXPECT_EQ(src.consumed(), 1u);
  }
}

TEST(NextChar, IdentityOnCodePoints) {
  ParameterSequence s{Octets({0x66, 0x00, 0x57})};
  ParametricSource src(s, nullptr);
  EXPECT_EQ(src.NextChar(), 'f');
  EXPECT_EQ(src.NextChar(), 0);
  EXPECT_EQ(src.NextChar(), 'W');
  EXPECT_EQ(src.consumed(), 3u);
}

TEST(ChooseFrom, SingletonAndForcedIndex) {
  {
    ParameterSequence s{{0x00}};
    ParametricSource src(s, nullptr);
    const std::vector<std::string> items = {"x"};
    EXPECT_EQ(src.ChooseFrom(items), "x");
  }
  {
    ParameterSequence s{{0x03}};
    ParametricSource src(s, nullptr);
    const std::vector<int> items = {10, 11, 12, 13};
    EXPECT_EQ(src.ChooseFrom(items), 13);
  }
}

TEST(ChooseFrom, DistributionFollowsModulusTable) {
  const std::vector<int> items = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> histogram(10, 0);
  for (int n = 0; n < 256; ++n) {
    ParameterSequence s{{static_cast<uint8_t>(n)}};
    ParametricSource src(s, nullptr);
    ++histogram[src.ChooseFrom(items)];
  }
  // 256 = 25 * 10 + 6: the first six items get one extra octet.
  for (int i = 0; i < 10; ++i) EXPECT_EQ(histogram[i], i < 6 ? 26 : 25) << i;
}

TEST(ChooseFrom, EmptyCollectionIsAGeneratorDefinitionError) {
  ParameterSequence s{{0}};
  ParametricSource src(s, nullptr);
  const std::vector<int> empty;
  EXPECT_THROW(src.ChooseFrom(empty), GeneratorDefinitionError);
}

TEST(Extend, AppendsStreamOctetsAndPersistsThem) {
  ExtensionStream stream(99);
  ExtensionStream reference(99);
  ParameterSequence s;
  ParametricSource src(s, &stream);
  const uint8_t octet = src.NextByte();
  ASSERT_EQ(s.bytes.size(), 1u);
  EXPECT_EQ(octet, reference.Next());
  EXPECT_EQ(s.bytes[0], octet);
  EXPECT_EQ(src.extended(), 1u);

  // The stored sequence now replays without the stream.
  ParameterSequence copy = s;
  ParametricSource replay(copy, nullptr);
  EXPECT_EQ(replay.NextByte(), octet);
  EXPECT_EQ(replay.extended(), 0u);
}

TEST(Extend, ExplicitCallsAndZeroRequest) {
  ExtensionStream stream(5);
  ParameterSequence s;
  ParametricSource src(s, &stream);
  EXPECT_TRUE(src.Extend(0).empty());
  EXPECT_TRUE(s.bytes.empty());
  const auto got = src.Extend(3);
  EXPECT_EQ(got.size(), 3u);
  EXPECT_EQ(s.bytes.size(), 3u);
  EXPECT_EQ(src.consumed(), 3u);
  EXPECT_EQ(src.cursor(), 3u);
}

TEST(Extend, RejectsCallsBeforeExhaustion) {
  ExtensionStream stream(5);
  ParameterSequence s{{1, 2}};
  ParametricSource src(s, &stream);
  EXPECT_THROW(src.Extend(1), GeneratorDefinitionError);
}

TEST(Extend, CapAbortsGeneration) {
  ExtensionStream stream(5);
  ParameterSequence s{{1, 2, 3}};
  ParametricSource src(s, &stream, /*cap=*/4);
  for (int i = 0; i < 4; ++i) src.NextByte();
  EXPECT_THROW(src.NextByte(), SequenceCapExceeded);
}

TEST(Extend, StrictReplayThrowsOnExhaustion) {
  ParameterSequence s{{1}};
  ParametricSource src(s, nullptr);
  src.NextByte();
  EXPECT_THROW(src.NextByte(), ReplayExhausted);
}

// Records every decoded value of a fixed mixed decoding script.
std::vector<int64_t> Trace(ParameterSequence& s, ExtensionStream* stream, size_t* consumed) {
  ParametricSource src(s, stream);
  std::vector<int64_t> out;
  for (int i = 0; i < 40; ++i) {
    switch (i % 4) {
      case 0:
        out.push_back(src.NextIntInRange(0, 13));
        break;
      case 1:
        out.push_back(src.NextBool());
        break;
      case 2:
        out.push_back(src.NextChar());
        break;
      default:
        out.push_back(src.NextIntInRange(-5, 1000));
    }
  }
  *consumed = src.consumed();
  EXPECT_EQ(src.cursor(), src.consumed());
  return out;
}

TEST(ParametricSource, DeterministicForAStoredSequenceWhateverTheStream) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    ParameterSequence grown{testing::RandomBytes(rng, trial)};
    ExtensionStream stream(trial);
    size_t c0 = 0;
    const auto t0 = Trace(grown, &stream, &c0);
    for (uint64_t seed : {1u, 2u, 3u}) {
      ParameterSequence copy = grown;
      ExtensionStream other(seed * 1000);
      size_t c1 = 0;
      EXPECT_EQ(Trace(copy, &other, &c1), t0);
      EXPECT_EQ(c1, c0);
      EXPECT_EQ(copy.bytes, grown.bytes);
    }
  }
}

TEST(ParametricSource, TailIndependence) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    ParameterSequence base{testing::RandomBytes(rng, 200)};
    size_t c0 = 0;
    const auto t0 = Trace(base, nullptr, &c0);
    ParameterSequence longer = base;
    const Bytes tail = testing::RandomBytes(rng, 1 + trial);
    longer.bytes.insert(longer.bytes.end(), tail.begin(), tail.end());
    size_t c1 = 0;
    EXPECT_EQ(Trace(longer, nullptr, &c1), t0);
    EXPECT_EQ(c1, c0);
  }
}

TEST(ParametricSource, OctetAccounting) {
  ExtensionStream stream(3);
  ParameterSequence s{{1, 2, 3, 4, 5}};
  ParametricSource src(s, &stream);
  for (int i = 0; i < 12; ++i) src.NextByte();
  EXPECT_EQ(src.consumed(), 12u);
  EXPECT_EQ(src.extended(), 7u);
  EXPECT_EQ(s.bytes.size(), 12u);
}

TEST(ExtensionStream, CounterBasedAndSeedDependent) {
  ExtensionStream a(7), b(7), c(8);
  std::vector<uint8_t> va, vb, vc;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a.Next());
    vb.push_back(b.Next());
    vc.push_back(c.Next());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_EQ(a.position(), 64u);
}

TEST(Hash, DeriveSeedSeparatesRepetitions) {
  EXPECT_EQ(DeriveSeed(1, 0), DeriveSeed(1, 0));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(Hex64(0xabcULL), "0000000000000abc");
}

}  // namespace
}  // namespace paramfuzz
