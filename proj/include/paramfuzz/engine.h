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


// Search engines over a target:
//
//   Zest        mutates parameter sequences and regenerates inputs through a
//               parametric generator; saves on new total coverage and on new
//               coverage by VALID runs.
//   CGF         the same loop over raw input bytes; saves on new total
//               coverage only.
//   QuickCheck  fresh random sequences for every run; never saves.
//
// Every engine numbers its executions 0, 1, 2, ... and uses the execution
// index as the id of the sequence that was run.

#ifndef PARAMFUZZ_ENGINE_H_
#define PARAMFUZZ_ENGINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paramfuzz/coverage.h"
#include "paramfuzz/generator.h"
#include "paramfuzz/mutation.h"
#include "paramfuzz/param.h"
#include "paramfuzz/target.h"

namespace paramfuzz {

enum class EngineKind : uint8_t { kZest, kCgf, kQuickCheck };

std::string_view EngineName(EngineKind kind);
// Throws std::invalid_argument for unknown names.
EngineKind ParseEngine(std::string_view name);

enum class SaveReason : uint8_t { kInitial, kNewTotalCoverage, kNewValidCoverage };

std::string_view SaveReasonName(SaveReason reason);
SaveReason ParseSaveReason(std::string_view name);

// Mutants to derive from one corpus entry per sweep.
int NumCandidates(SaveReason reason);

// Bad campaign configuration (no seeds, unknown names, mismatched generator).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replay of a sequence recorded under a different generator configuration.
class ConfigMismatchError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

struct Budget {
  enum class Kind : uint8_t { kExecutions, kSeconds };
  Kind kind = Kind::kSeconds;
  double amount = 60;

  static Budget Executions(uint64_t n) { return {Kind::kExecutions, static_cast<double>(n)}; }
  static Budget Seconds(double s) { return {Kind::kSeconds, s}; }

  // "60s", "2m", "500ms", "10000execs" or "10000x".
  static Budget Parse(std::string_view text);
  std::string ToString() const;
};

struct CorpusEntry {
  ParameterSequence sequence;
  SaveReason reason = SaveReason::kInitial;
  int64_t parent_id = -1;
  double t = 0;
  Result result = Result::kValid;
  CoverageSet coverage;
};

struct FailureEntry {
  ParameterSequence sequence;
  FailureKey key;
  int64_t parent_id = -1;
  double t = 0;
  std::string input;
  CoverageSet coverage;
};

struct StatsRecord {
  double t = 0;
  uint64_t execs = 0;
  uint64_t valid = 0;
  uint64_t invalid = 0;
  uint64_t failures = 0;
  size_t total_cov = 0;
  size_t valid_cov = 0;
  size_t sem_cov = 0;
  double sem_ratio = 0;
  size_t corpus = 0;
  uint64_t discarded = 0;

  bool operator==(const StatsRecord&) const = default;
};

// One line of the event log.
struct EventRecord {
  int64_t exec_index = 0;
  int64_t parent_id = -1;
  Result result = Result::kValid;
  std::vector<PointId> new_total;
  std::vector<PointId> new_valid;
  std::optional<FailureKey> failure;

  bool operator==(const EventRecord&) const = default;
};

// Everything known about one execution, for observers.
struct ExecutionRecord {
  EventRecord event;
  const RunOutcome* outcome = nullptr;
  const ParameterSequence* sequence = nullptr;
  std::string_view input;
  std::optional<SaveReason> saved;
  double t = 0;
};

using ExecutionObserver = std::function<void(const ExecutionRecord&)>;

struct EngineOptions {
  uint64_t seed = 0;
  Budget budget;
  MutationParams mutation;
  size_t sequence_cap = kDefaultSequenceCap;
  // Artifacts are written here when nonempty.
  std::filesystem::path out_dir;
  ExecutionObserver observer;
  double stats_interval = 1.0;
  // Fresh random sequences tried when the initial Zest input fails.
  int initial_attempts = 100;
};

struct CampaignResult {
  EngineKind engine = EngineKind::kZest;
  std::vector<CorpusEntry> corpus;
  // First failure per key, in discovery order.
  std::vector<FailureEntry> failures;
  std::map<FailureKey, uint64_t> failure_counts;
  CoverageSet total_coverage;
  CoverageSet valid_coverage;
  std::vector<StatsRecord> stats;
  StatsRecord final_stats;
  std::string generator_fingerprint;
};

CampaignResult RunZest(const Target& target, const Generator& generator,
                       const EngineOptions& options);
CampaignResult RunCgf(const Target& target, const std::vector<Bytes>& seeds,
                      const EngineOptions& options);
CampaignResult RunQuickCheck(const Target& target, const Generator& generator,
                             const EngineOptions& options);

// Generated input of a stored sequence, without extension. Throws
// ReplayExhausted if the sequence is too short.
std::string Regenerate(const Generator& generator, const ParameterSequence& sequence);

// Re-executes a stored parameter sequence. When `expected_fingerprint` is
// nonempty it must equal the generator's fingerprint.
RunOutcome Replay(const Target& target, const Generator& generator,
                  const ParameterSequence& sequence,
                  std::string_view expected_fingerprint = {});
// Re-executes a raw input (byte-level engine entries).
RunOutcome ReplayRaw(const Target& target, const Bytes& input);

// ---- triage ----

struct FailureObservation {
  FailureKey key;
  double t = 0;
  int64_t exec_index = 0;
  std::string witness;
};

struct TriagedFailure {
  FailureKey key;
  double first_t = 0;
  int64_t first_exec = 0;
  std::string witness;
  uint64_t count = 0;
};

// Groups observations by key, keeping the earliest (by time, then by
// execution index) as the witness.
std::map<FailureKey, TriagedFailure> Triage(const std::vector<FailureObservation>& failures);

}  // namespace paramfuzz

#endif  // PARAMFUZZ_ENGINE_H_
