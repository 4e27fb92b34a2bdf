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


// Campaign configuration, single campaigns, repeated experiments and the
// log-derived report.

#ifndef PARAMFUZZ_CAMPAIGN_H_
#define PARAMFUZZ_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paramfuzz/engine.h"
#include "paramfuzz/target.h"

namespace paramfuzz {

enum class Dispersion : uint8_t { kMinMax, kCi95 };

struct CampaignConfig {
  EngineKind engine = EngineKind::kZest;
  // Engines compared by an experiment.
  std::vector<EngineKind> engines = {EngineKind::kZest, EngineKind::kCgf, EngineKind::kQuickCheck};
  std::string target = "minixml";
  // Empty means the target's default generator.
  std::string generator;
  uint64_t seed = 0;
  Budget budget = Budget::Seconds(60);
  MutationParams mutation;
  size_t sequence_cap = kDefaultSequenceCap;
  std::vector<std::filesystem::path> seed_inputs;
  // Replaces the generator's primary literal pool: element names for "xml",
  // string literals for "script".
  std::filesystem::path literal_pool;
  bool warnings_as_invalid = false;
  std::filesystem::path out_dir;
  int repetitions = 10;
  Dispersion dispersion = Dispersion::kMinMax;

  // Throws ConfigError.
  void Validate(bool experiment) const;
  std::string GeneratorName() const;
  std::string ToJson() const;
  // Unknown keys are rejected.
  static CampaignConfig FromJson(const std::string& text);
  static CampaignConfig Load(const std::filesystem::path& file);
};

std::unique_ptr<Target> BuildTarget(const CampaignConfig& config);
std::unique_ptr<Generator> BuildGenerator(const CampaignConfig& config);

// The byte-level engine's default seed: the first VALID input produced by
// the target's default generator from the campaign's extension stream.
Bytes FirstValidInput(const Target& target, const Generator& generator, uint64_t seed,
                      int max_attempts = 1000000);

enum class ExitStatus : int { kClean = 0, kFailureFound = 1, kConfigError = 2 };

struct CampaignOutcome {
  ExitStatus status = ExitStatus::kClean;
  std::string error;
  CampaignResult result;
};

// Runs one campaign and writes its artifacts (plus campaign.json and
// planted_bugs.json) under config.out_dir.
CampaignOutcome RunCampaign(const CampaignConfig& config, const ExecutionObserver& observer = {});

struct ReplayCheck {
  int64_t id = -1;
  bool failure_entry = false;
  bool match = false;
  std::string detail;
};

struct ReplaySummary {
  size_t checked = 0;
  size_t matched = 0;
  std::vector<ReplayCheck> mismatches;
};

// Replays every corpus and failure entry of a campaign directory against its
// recorded result, coverage and failure key. A nonempty
// `generator_override` replays with that generator instead, which raises
// ConfigMismatchError when it differs from the recorded one.
ReplaySummary ReplayCampaign(const std::filesystem::path& dir,
                             const std::string& generator_override = "");

// ---- experiments and reports ----

// What the report needs from one campaign.
struct CellData {
  std::string target;
  EngineKind engine = EngineKind::kZest;
  int rep = 0;
  bool completed = false;
  std::string error;
  std::vector<StatsRecord> stats;
  std::map<FailureKey, double> first_found;
};

struct BugRow {
  std::string target;
  EngineKind engine;
  FailureKey key;
  bool planted = false;
  Stage stage = Stage::kNone;
  int found = 0;
  int reps = 0;
  double reliability = 0;
  // Defined only when found > 0.
  std::optional<double> mtf;
};

struct SeriesRow {
  std::string target;
  EngineKind engine;
  double t = 0;
  int n = 0;
  double total_mean = 0, total_lo = 0, total_hi = 0;
  double sem_mean = 0, sem_lo = 0, sem_hi = 0;
};

struct ExperimentReport {
  std::vector<BugRow> bugs;
  std::vector<SeriesRow> series;
  std::vector<std::string> errors;

  std::string ToJson() const;
  std::string SeriesCsv() const;
  std::string Summary() const;
};

// Last stats record with t <= `t`, or a zero record.
StatsRecord StatsAt(const std::vector<StatsRecord>& stats, double t);

ExperimentReport BuildReport(const std::vector<CellData>& cells, Dispersion dispersion);
CellData CellFromResult(const std::string& target, EngineKind engine, int rep,
                        const CampaignResult& result);
// Reads a campaign directory. Never throws: problems land in `error`.
CellData CellFromDir(const std::filesystem::path& dir);
// Campaign directories under `root` (any directory holding campaign.json).
std::vector<std::filesystem::path> FindCampaignDirs(const std::filesystem::path& root);

struct ExperimentResult {
  ExperimentReport report;
  std::vector<CellData> cells;
};

// Runs config.repetitions campaigns per engine into
// <out>/<engine>/rep_<r>, with seed DeriveSeed(config.seed, r) for every
// engine of repetition r. Writes report.json and coverage.csv into <out>.
ExperimentResult RunExperiment(const CampaignConfig& config);

// Rebuilds the report from campaign directories and writes it under
// `out` (if nonempty).
ExperimentReport ReportFromDirs(const std::vector<std::filesystem::path>& roots,
                                Dispersion dispersion, const std::filesystem::path& out);

}  // namespace paramfuzz

#endif  // PARAMFUZZ_CAMPAIGN_H_
