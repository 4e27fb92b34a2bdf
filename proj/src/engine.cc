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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "paramfuzz/artifacts.h"
#include "paramfuzz/hash.h"

namespace paramfuzz {
namespace {

constexpr uint64_t kExtensionSalt = 0x657874656e64ULL;
constexpr uint64_t kMutationSalt = 0x6d7574617465ULL;
constexpr std::string_view kRawFingerprint = "raw";

// One engine loop: executes candidates, maintains the coverage sets, the
// corpus and the failure set, and emits artifacts.
class Loop {
 public:
  Loop(EngineKind kind, const Target& target, const Generator* generator,
       const EngineOptions& options)
      : kind_(kind),
        target_(target),
        generator_(generator),
        options_(options),
        extension_(SplitMix64(options.seed ^ kExtensionSalt)),
        mutator_(WithSeed(options.mutation, SplitMix64(options.seed ^ kMutationSalt))),
        start_(std::chrono::steady_clock::now()) {
    result_.engine = kind;
    result_.generator_fingerprint =
        generator_ != nullptr ? generator_->Fingerprint() : std::string(kRawFingerprint);
    if (!options.out_dir.empty()) {
      writer_ = std::make_unique<ArtifactWriter>(options.out_dir, result_.generator_fingerprint);
    }
    next_stats_ = options.stats_interval;
  }

  bool Done() const {
    if (options_.budget.kind == Budget::Kind::kExecutions) {
      return static_cast<double>(execs_) >= options_.budget.amount;
    }
    return Now() >= options_.budget.amount;
  }

  // Generates an input from `bytes` (extending as needed) and executes it.
  // The stored sequence keeps only the octets the generator read, so later
  // mutations land on live parameters. Returns the save reason, if any.
  // Candidates over the cap are discarded.
  std::optional<SaveReason> RunGenerated(Bytes bytes, int64_t parent, bool initial) {
    ParameterSequence sequence{std::move(bytes)};
    std::string input;
    try {
      ParametricSource source(sequence, &extension_, options_.sequence_cap);
      input = generator_->Generate(source).text;
      sequence.bytes.resize(std::max<size_t>(source.consumed(), 1));
    } catch (const SequenceCapExceeded&) {
      ++discarded_;
      return std::nullopt;
    }
    return Process(std::move(sequence), input, parent, initial);
  }

  std::optional<SaveReason> RunRaw(Bytes bytes, int64_t parent, bool initial) {
    const std::string input(bytes.begin(), bytes.end());
    return Process(ParameterSequence{std::move(bytes)}, input, parent, initial);
  }

  Bytes Mutate(const Bytes& parent) { return mutator_.Mutate(parent); }

  std::vector<CorpusEntry>& corpus() { return result_.corpus; }

  CampaignResult Finish() {
    EmitStats(Now());
    result_.total_coverage = total_;
    result_.valid_coverage = valid_;
    if (writer_) writer_->Summary(result_);
    return std::move(result_);
  }

 private:
  static MutationParams WithSeed(MutationParams params, uint64_t seed) {
    params.rng_seed = seed;
    return params;
  }

  double Now() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  std::optional<SaveReason> Process(ParameterSequence sequence, const std::string& input,
                                    int64_t parent, bool initial) {
    const int64_t index = static_cast<int64_t>(execs_++);
    sequence.id = index;
    RunOutcome outcome = target_.Execute(input, recorder_);
    const double t = Now();

    EventRecord event{index, parent, outcome.result, {}, {}, outcome.failure};
    std::optional<SaveReason> saved;
    bool new_key = false;
    switch (outcome.result) {
      case Result::kValid:
        ++valid_count_;
        break;
      case Result::kInvalid:
        ++invalid_count_;
        break;
      case Result::kFailure:
        ++failure_count_;
        break;
    }
    if (outcome.result == Result::kFailure) {
      uint64_t& count = result_.failure_counts[*outcome.failure];
      new_key = count++ == 0;
      if (new_key) {
        result_.failures.push_back({sequence, *outcome.failure, parent, t, input, outcome.coverage});
        if (writer_) writer_->Failure(result_.failures.back());
      }
    } else {
      event.new_total = total_.UnionWith(outcome.coverage);
      if (outcome.result == Result::kValid) event.new_valid = valid_.UnionWith(outcome.coverage);
      if (kind_ != EngineKind::kQuickCheck) {
        if (initial) {
          saved = SaveReason::kInitial;
        } else if (kind_ == EngineKind::kZest && !event.new_valid.empty()) {
          saved = SaveReason::kNewValidCoverage;
        } else if (!event.new_total.empty()) {
          saved = SaveReason::kNewTotalCoverage;
        }
      }
      if (saved) {
        result_.corpus.push_back({sequence, *saved, parent, t, outcome.result, outcome.coverage});
        if (writer_) writer_->Corpus(result_.corpus.back());
      }
    }

    if (writer_) writer_->Event(event);
    if (options_.observer) {
      options_.observer({event, &outcome, &sequence, input, saved, t});
    }
    if (saved || new_key || t >= next_stats_) {
      EmitStats(t);
      if (t >= next_stats_) next_stats_ = std::floor(t / options_.stats_interval + 1) * options_.stats_interval;
    }
    return saved;
  }

  void EmitStats(double t) {
    StatsRecord s;
    s.t = t;
    s.execs = execs_;
    s.valid = valid_count_;
    s.invalid = invalid_count_;
    s.failures = failure_count_;
    s.total_cov = total_.size();
    s.valid_cov = valid_.size();
    const SemanticTally tally = SemanticBranchCount(total_, target_.points());
    s.sem_cov = tally.count;
    s.sem_ratio = tally.ratio;
    s.corpus = result_.corpus.size();
    s.discarded = discarded_;
    result_.stats.push_back(s);
    result_.final_stats = s;
    if (writer_) writer_->Stats(s);
  }

  EngineKind kind_;
  const Target& target_;
  const Generator* generator_;
  const EngineOptions& options_;
  ExtensionStream extension_;
  Mutator mutator_;
  std::chrono::steady_clock::time_point start_;
  std::unique_ptr<ArtifactWriter> writer_;
  CoverageRecorder recorder_;
  CampaignResult result_;
  CoverageSet total_;
  CoverageSet valid_;
  uint64_t execs_ = 0;
  uint64_t valid_count_ = 0;
  uint64_t invalid_count_ = 0;
  uint64_t failure_count_ = 0;
  uint64_t discarded_ = 0;
  double next_stats_ = 1.0;
};

// Sweeps the corpus by index so that entries saved during a sweep are
// visited in the same sweep.
template <typename RunChild>
void Sweep(Loop& loop, RunChild run_child) {
  size_t index = 0;
  while (!loop.Done()) {
    if (index >= loop.corpus().size()) index = 0;
    const Bytes parent = loop.corpus()[index].sequence.bytes;
    const int64_t parent_id = loop.corpus()[index].sequence.id;
    const int candidates = NumCandidates(loop.corpus()[index].reason);
    ++index;
    if (parent.empty()) continue;
    for (int c = 0; c < candidates && !loop.Done(); ++c) {
      run_child(loop.Mutate(parent), parent_id);
    }
  }
}

}  // namespace

std::string_view EngineName(EngineKind kind) {
  switch (kind) {
    case EngineKind::kZest:
      return "zest";
    case EngineKind::kCgf:
      return "cgf";
    case EngineKind::kQuickCheck:
      return "quickcheck";
  }
  return "zest";
}

EngineKind ParseEngine(std::string_view name) {
  if (name == "zest") return EngineKind::kZest;
  if (name == "cgf") return EngineKind::kCgf;
  if (name == "quickcheck") return EngineKind::kQuickCheck;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view SaveReasonName(SaveReason reason) {
  switch (reason) {
    case SaveReason::kInitial:
      return "initial";
    case SaveReason::kNewTotalCoverage:
      return "new_total_coverage";
    case SaveReason::kNewValidCoverage:
      return "new_valid_coverage";
  }
  return "initial";
}

SaveReason ParseSaveReason(std::string_view name) {
  if (name == "initial") return SaveReason::kInitial;
  if (name == "new_total_coverage") return SaveReason::kNewTotalCoverage;
  if (name == "new_valid_coverage") return SaveReason::kNewValidCoverage;
  throw std::invalid_argument("unknown save reason '" + std::string(name) + "'");
}

int NumCandidates(SaveReason reason) { return reason == SaveReason::kNewValidCoverage ? 40 : 20; }

Budget Budget::Parse(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  const std::string unit(end);
  if (end == s.c_str() || !(value >= 0)) throw std::invalid_argument("bad budget '" + s + "'");
  if (unit == "s" || unit.empty()) return Seconds(value);
  if (unit == "ms") return Seconds(value / 1000);
  if (unit == "m" || unit == "min") return Seconds(value * 60);
  if (unit == "h") return Seconds(value * 3600);
  if (unit == "x" || unit == "execs") {
    if (value != std::floor(value)) throw std::invalid_argument("bad budget '" + s + "'");
    return Executions(static_cast<uint64_t>(value));
  }
  throw std::invalid_argument("bad budget unit in '" + s + "'");
}

std::string Budget::ToString() const {
  if (kind == Kind::kExecutions) return std::to_string(static_cast<uint64_t>(amount)) + "execs";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%gs", amount);
  return buf;
}

CampaignResult RunZest(const Target& target, const Generator& generator,
                       const EngineOptions& options) {
  Loop loop(EngineKind::kZest, target, &generator, options);
  for (int attempt = 0; attempt < options.initial_attempts && loop.corpus().empty(); ++attempt) {
    if (loop.Done()) return loop.Finish();
    loop.RunGenerated({}, -1, /*initial=*/true);
  }
  if (loop.corpus().empty()) throw ConfigError("could not generate a non-failing initial input");
  Sweep(loop, [&](Bytes child, int64_t parent) { loop.RunGenerated(std::move(child), parent, false); });
  return loop.Finish();
}

CampaignResult RunCgf(const Target& target, const std::vector<Bytes>& seeds,
                      const EngineOptions& options) {
  if (seeds.empty()) throw ConfigError("the byte-level engine needs at least one seed input");
  for (const Bytes& seed : seeds) {
    if (seed.empty()) throw ConfigError("seed inputs must be nonempty");
  }
  Loop loop(EngineKind::kCgf, target, nullptr, options);
  for (const Bytes& seed : seeds) {
    if (loop.Done()) return loop.Finish();
    loop.RunRaw(seed, -1, /*initial=*/true);
  }
  if (loop.corpus().empty()) throw ConfigError("every seed input fails");
  Sweep(loop, [&](Bytes child, int64_t parent) { loop.RunRaw(std::move(child), parent, false); });
  return loop.Finish();
}

CampaignResult RunQuickCheck(const Target& target, const Generator& generator,
                             const EngineOptions& options) {
  Loop loop(EngineKind::kQuickCheck, target, &generator, options);
  while (!loop.Done()) loop.RunGenerated({}, -1, false);
  return loop.Finish();
}

std::string Regenerate(const Generator& generator, const ParameterSequence& sequence) {
  ParameterSequence copy = sequence;
  ParametricSource source(copy, nullptr);
  return generator.Generate(source).text;
}

RunOutcome Replay(const Target& target, const Generator& generator,
                  const ParameterSequence& sequence, std::string_view expected_fingerprint) {
  if (!expected_fingerprint.empty() && expected_fingerprint != generator.Fingerprint()) {
    throw ConfigMismatchError("sequence was recorded with generator '" +
                              std::string(expected_fingerprint) + "', not '" +
                              generator.Fingerprint() + "'");
  }
  CoverageRecorder recorder;
  return target.Execute(Regenerate(generator, sequence), recorder);
}

RunOutcome ReplayRaw(const Target& target, const Bytes& input) {
  CoverageRecorder recorder;
  return target.Execute(std::string(input.begin(), input.end()), recorder);
}

std::map<FailureKey, TriagedFailure> Triage(const std::vector<FailureObservation>& failures) {
  std::map<FailureKey, TriagedFailure> out;
  for (const FailureObservation& f : failures) {
    auto [it, inserted] = out.try_emplace(f.key);
    TriagedFailure& entry = it->second;
    ++entry.count;
    const bool earlier =
        f.t < entry.first_t || (f.t == entry.first_t && f.exec_index < entry.first_exec);
    if (inserted || earlier) {
      entry.key = f.key;
      entry.first_t = f.t;
      entry.first_exec = f.exec_index;
      entry.witness = f.witness;
    }
  }
  return out;
}

}  // namespace paramfuzz
