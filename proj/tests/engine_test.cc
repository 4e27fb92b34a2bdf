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


#include "paramfuzz/engine.h"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "paramfuzz/targets.h"
#include "test_util.h"

namespace paramfuzz {
namespace {

struct Seen {
  EventRecord event;
  CoverageSet coverage;
  std::optional<SaveReason> saved;
  std::string input;
};

EngineOptions Execs(uint64_t n, uint64_t seed, std::vector<Seen>* log = nullptr) {
  EngineOptions options;
  options.seed = seed;
  options.budget = Budget::Executions(n);
  if (log != nullptr) {
    options.observer = [log](const ExecutionRecord& r) {
      log->push_back({r.event, r.outcome->coverage, r.saved, std::string(r.input)});
    };
  }
  return options;
}

class ZestCampaign : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    target_ = MakeTarget(GetParam());
    generator_ = MakeGenerator(DefaultGeneratorFor(GetParam()));
    result_ = RunZest(*target_, *generator_, Execs(4000, 17, &log_));
  }

  std::unique_ptr<Target> target_;
  std::unique_ptr<Generator> generator_;
  std::vector<Seen> log_;
  CampaignResult result_;
};

TEST_P(ZestCampaign, LogRecomputesFinalState) {
  ASSERT_EQ(log_.size(), 4000u);
  CoverageSet total;
  CoverageSet valid;
  std::vector<int64_t> saved_ids;
  for (size_t i = 0; i < log_.size(); ++i) {
    const Seen& s = log_[i];
    ASSERT_EQ(s.event.exec_index, static_cast<int64_t>(i));
    const size_t total_before = total.size();
    const size_t valid_before = valid.size();
    std::vector<PointId> new_total;
    std::vector<PointId> new_valid;
    if (s.event.result != Result::kFailure) new_total = total.UnionWith(s.coverage);
    if (s.event.result == Result::kValid) new_valid = valid.UnionWith(s.coverage);
    EXPECT_EQ(s.event.new_total, new_total);
    EXPECT_EQ(s.event.new_valid, new_valid);
    EXPECT_GE(total.size(), total_before);
    EXPECT_GE(valid.size(), valid_before);
    ASSERT_TRUE(valid.IsSubsetOf(total)) << "step " << i;
    if (s.saved) {
      EXPECT_NE(s.event.result, Result::kFailure);
      if (s.event.parent_id >= 0) EXPECT_TRUE(!new_total.empty() || !new_valid.empty());
      const SaveReason expected = s.event.parent_id < 0           ? SaveReason::kInitial
                                  : !new_valid.empty()            ? SaveReason::kNewValidCoverage
                                                                  : SaveReason::kNewTotalCoverage;
      EXPECT_EQ(*s.saved, expected) << "step " << i;
      saved_ids.push_back(s.event.exec_index);
    } else {
      EXPECT_TRUE((new_total.empty() && new_valid.empty()) || s.event.result == Result::kFailure);
    }
  }
  EXPECT_EQ(total, result_.total_coverage);
  EXPECT_EQ(valid, result_.valid_coverage);
  ASSERT_EQ(saved_ids.size(), result_.corpus.size());
  for (size_t k = 0; k < saved_ids.size(); ++k) {
    EXPECT_EQ(result_.corpus[k].sequence.id, saved_ids[k]);
  }
}

TEST_P(ZestCampaign, FailuresNeverEnterTheCorpus) {
  for (const auto& entry : result_.corpus) EXPECT_NE(entry.result, Result::kFailure);
  std::set<FailureKey> keys;
  for (const auto& f : result_.failures) EXPECT_TRUE(keys.insert(f.key).second);
  uint64_t failing = 0;
  for (const auto& s : log_) failing += s.event.result == Result::kFailure;
  uint64_t counted = 0;
  for (const auto& [key, n] : result_.failure_counts) counted += n;
  EXPECT_EQ(counted, failing);
  EXPECT_EQ(result_.final_stats.failures, failing);
}

TEST_P(ZestCampaign, SweepDerivesNumCandidatesChildrenPerEntry) {
  ASSERT_EQ(result_.final_stats.discarded, 0u);
  std::map<int64_t, SaveReason> reason;
  for (const auto& entry : result_.corpus) reason[entry.sequence.id] = entry.reason;
  // Children of one parent are contiguous; every complete run has the
  // entry's candidate count.
  size_t i = 0;
  while (i < log_.size() && log_[i].event.parent_id < 0) ++i;
  while (i < log_.size()) {
    const int64_t parent = log_[i].event.parent_id;
    ASSERT_TRUE(reason.count(parent)) << parent;
    size_t j = i;
    while (j < log_.size() && log_[j].event.parent_id == parent) ++j;
    if (j < log_.size()) {
      EXPECT_EQ(static_cast<int>(j - i), NumCandidates(reason[parent])) << "parent " << parent;
    }
    i = j;
  }
  EXPECT_EQ(NumCandidates(SaveReason::kInitial), 20);
  EXPECT_EQ(NumCandidates(SaveReason::kNewTotalCoverage), 20);
  EXPECT_EQ(NumCandidates(SaveReason::kNewValidCoverage), 40);
}

TEST_P(ZestCampaign, EveryEntryReplays) {
  for (const auto& entry : result_.corpus) {
    const RunOutcome out = Replay(*target_, *generator_, entry.sequence,
                                  result_.generator_fingerprint);
    EXPECT_EQ(out.result, entry.result);
    EXPECT_EQ(out.coverage, entry.coverage);
  }
  for (const auto& f : result_.failures) {
    const RunOutcome out = Replay(*target_, *generator_, f.sequence);
    ASSERT_EQ(out.result, Result::kFailure);
    EXPECT_EQ(*out.failure, f.key);
    EXPECT_EQ(Regenerate(*generator_, f.sequence), f.input);
  }
  ASSERT_FALSE(result_.corpus.empty());
  EXPECT_THROW(Replay(*target_, *generator_, result_.corpus[0].sequence, "xml:0000"),
               ConfigMismatchError);
}

TEST_P(ZestCampaign, SavedSequencesHoldExactlyTheOctetsRead) {
  for (const auto& entry : result_.corpus) {
    ParameterSequence copy = entry.sequence;
    ParametricSource source(copy, nullptr);
    generator_->Generate(source);
    EXPECT_EQ(source.consumed(), entry.sequence.bytes.size());
  }
}

TEST_P(ZestCampaign, SameSeedSameCampaign) {
  std::vector<Seen> again;
  const CampaignResult other = RunZest(*target_, *generator_, Execs(4000, 17, &again));
  ASSERT_EQ(again.size(), log_.size());
  for (size_t i = 0; i < log_.size(); ++i) {
    ASSERT_EQ(again[i].event, log_[i].event) << i;
    ASSERT_EQ(again[i].input, log_[i].input) << i;
  }
  EXPECT_EQ(other.total_coverage, result_.total_coverage);
  std::vector<Seen> different;
  RunZest(*target_, *generator_, Execs(4000, 18, &different));
  bool differs = false;
  for (size_t i = 0; i < log_.size(); ++i) differs |= different[i].input != log_[i].input;
  EXPECT_TRUE(differs);
}

INSTANTIATE_TEST_SUITE_P(Targets, ZestCampaign, ::testing::Values("minixml", "miniscript"));

TEST(QuickCheck, NeverSavesButTracksCoverage) {
  auto target = MakeTarget("minixml");
  auto gen = MakeGenerator("xml");
  std::vector<Seen> log;
  const CampaignResult r = RunQuickCheck(*target, *gen, Execs(2000, 3, &log));
  EXPECT_TRUE(r.corpus.empty());
  EXPECT_EQ(r.final_stats.execs, 2000u);
  EXPECT_FALSE(r.total_coverage.empty());
  for (const auto& s : log) {
    EXPECT_EQ(s.event.parent_id, -1);
    EXPECT_FALSE(s.saved);
  }
}

TEST(Zest, BeatsQuickCheckOnValidityForTheXmlTarget) {
  auto target = MakeTarget("minixml");
  auto gen = MakeGenerator("xml");
  const auto zest = RunZest(*target, *gen, Execs(20000, 5));
  const auto qc = RunQuickCheck(*target, *gen, Execs(20000, 5));
  EXPECT_GT(zest.final_stats.valid, qc.final_stats.valid);
  EXPECT_GT(zest.valid_coverage.CountRegion(Region::kSemantic),
            qc.valid_coverage.CountRegion(Region::kSemantic));
}

TEST(Cgf, SeedsAreRequired) {
  auto target = MakeTarget("minixml");
  EXPECT_THROW(RunCgf(*target, {}, Execs(10, 1)), ConfigError);
  EXPECT_THROW(RunCgf(*target, {Bytes{}}, Execs(10, 1)), ConfigError);
  const std::string bug = target->planted_bugs()[0].witness;
  EXPECT_THROW(RunCgf(*target, {Bytes(bug.begin(), bug.end())}, Execs(10, 1)), ConfigError);
}

TEST(Cgf, SavesOnlyOnNewTotalCoverage) {
  auto target = MakeTarget("minixml");
  const std::string seed = "<project name=\"p\"><target name=\"a\" /></project>";
  std::vector<Seen> log;
  const auto r = RunCgf(*target, {Bytes(seed.begin(), seed.end())}, Execs(5000, 2, &log));
  ASSERT_FALSE(r.corpus.empty());
  EXPECT_EQ(r.corpus[0].reason, SaveReason::kInitial);
  EXPECT_EQ(r.corpus[0].parent_id, -1);
  EXPECT_EQ(r.generator_fingerprint, "raw");
  for (size_t i = 1; i < r.corpus.size(); ++i) {
    EXPECT_EQ(r.corpus[i].reason, SaveReason::kNewTotalCoverage);
  }
  for (const auto& s : log) {
    if (s.saved) {
      EXPECT_TRUE(s.event.exec_index == 0 || !s.event.new_total.empty());
    }
  }
  for (const auto& entry : r.corpus) {
    const RunOutcome out = ReplayRaw(*target, entry.sequence.bytes);
    EXPECT_EQ(out.coverage, entry.coverage);
  }
}

TEST(Triage, KeepsEarliestWitnessPerKey) {
  std::mt19937_64 rng(12);
  std::vector<FailureKey> keys;
  for (int k = 0; k < 7; ++k) {
    keys.push_back({"T" + std::to_string(k % 3), "m" + std::to_string(k % 2), "L" + std::to_string(k)});
  }
  std::vector<FailureObservation> stream;
  std::map<FailureKey, std::pair<double, int64_t>> earliest;
  std::map<FailureKey, uint64_t> counts;
  for (int i = 0; i < 500; ++i) {
    const FailureKey& key = keys[rng() % keys.size()];
    const double t = static_cast<double>(rng() % 100) / 10;
    const int64_t exec = static_cast<int64_t>(rng() % 100000);
    stream.push_back({key, t, exec, key.location + "@" + std::to_string(exec)});
    auto [it, fresh] = earliest.try_emplace(key, t, exec);
    if (!fresh) it->second = std::min(it->second, std::make_pair(t, exec));
    ++counts[key];
  }
  const auto triaged = Triage(stream);
  EXPECT_EQ(triaged.size(), earliest.size());
  for (const auto& [key, tf] : triaged) {
    EXPECT_EQ(tf.key, key);
    EXPECT_EQ(std::make_pair(tf.first_t, tf.first_exec), earliest.at(key));
    EXPECT_EQ(tf.witness, key.location + "@" + std::to_string(tf.first_exec));
    EXPECT_EQ(tf.count, counts.at(key));
  }
}

TEST(Triage, TieOnTimeBreaksByExecutionIndex) {
  const FailureKey k{"A", "b", "c"};
  const auto t = Triage({{k, 1.0, 9, "late"}, {k, 1.0, 3, "early"}, {k, 2.0, 0, "later"}});
  EXPECT_EQ(t.at(k).witness, "early");
  EXPECT_TRUE(Triage({}).empty());
}

TEST(Budget, ParsesUnits) {
  EXPECT_EQ(Budget::Parse("60s").amount, 60);
  EXPECT_EQ(Budget::Parse("2m").amount, 120);
  EXPECT_EQ(Budget::Parse("500ms").amount, 0.5);
  EXPECT_EQ(Budget::Parse("1h").amount, 3600);
  EXPECT_EQ(Budget::Parse("10000x").kind, Budget::Kind::kExecutions);
  EXPECT_EQ(Budget::Parse("250execs").amount, 250);
  EXPECT_EQ(Budget::Executions(10).ToString(), "10execs");
  EXPECT_THROW(Budget::Parse("fast"), std::invalid_argument);
}

TEST(Names, RoundTrip) {
  for (auto kind : {EngineKind::kZest, EngineKind::kCgf, EngineKind::kQuickCheck}) {
    EXPECT_EQ(ParseEngine(EngineName(kind)), kind);
  }
  for (auto r : {SaveReason::kInitial, SaveReason::kNewTotalCoverage, SaveReason::kNewValidCoverage}) {
    EXPECT_EQ(ParseSaveReason(SaveReasonName(r)), r);
  }
  EXPECT_THROW(ParseEngine("afl"), std::invalid_argument);
}

}  // namespace
}  // namespace paramfuzz
