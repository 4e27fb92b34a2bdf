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


// Command-line front end.
//
//   paramfuzz run        one campaign
//   paramfuzz experiment repeated campaigns per engine, plus a report
//   paramfuzz replay     re-execute every saved entry of a campaign
//   paramfuzz report     rebuild metrics from campaign directories
//
// Exit status: 0 clean, 1 failure found (run) or replay mismatch, 2
// configuration error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paramfuzz/campaign.h"
#include "paramfuzz/engine.h"

namespace {

namespace fs = std::filesystem;
using paramfuzz::CampaignConfig;
using paramfuzz::ExitStatus;

constexpr int kConfigError = static_cast<int>(ExitStatus::kConfigError);

// Flags shared by `run` and `experiment`. Values stay empty unless given,
// so that a --config file supplies the defaults.
struct CampaignFlags {
  std::string config_file;
  std::string engine;
  std::vector<std::string> engines;
  std::string target;
  std::string generator;
  std::string budget;
  std::string out;
  std::string literal_pool;
  std::string dispersion;
  std::vector<std::string> seed_inputs;
  uint64_t seed = 0;
  double mean_count = 0;
  double mean_length = 0;
  size_t sequence_cap = 0;
  int reps = 0;
  bool warnings_as_invalid = false;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* warnings_opt = nullptr;

  void Register(CLI::App* app, bool experiment) {
    app->add_option("--config", config_file, "JSON campaign configuration");
    if (experiment) {
      app->add_option("--engines", engines, "engines to compare (zest, cgf, quickcheck)");
      app->add_option("--reps", reps, "repetitions per engine");
      app->add_option("--dispersion", dispersion, "band: minmax or ci95")
          ->check(CLI::IsMember({"minmax", "ci95"}));
    } else {
      app->add_option("--engine", engine, "zest, cgf or quickcheck");
    }
    app->add_option("--target", target, "minixml or miniscript");
    app->add_option("--generator", generator, "xml or script (default: the target's)");
    app->add_option("--budget", budget, "60s, 2m, or 10000execs");
    seed_opt = app->add_option("--seed", seed, "campaign seed");
    app->add_option("--seed-input", seed_inputs, "seed input file for the byte-level engine");
    app->add_option("--out", out, "output directory");
    app->add_option("--literal-pool", literal_pool, "literal pool file, one literal per line");
    app->add_option("--mean-count", mean_count, "mean number of mutations per mutant");
    app->add_option("--mean-length", mean_length, "mean mutation window length");
    app->add_option("--sequence-cap", sequence_cap, "maximum parameter sequence length");
    warnings_opt = app->add_flag("--warnings-as-invalid", warnings_as_invalid,
                                 "script target: treat compiler warnings as INVALID");
  }

  CampaignConfig Build() const {
    CampaignConfig c = config_file.empty() ? CampaignConfig{} : CampaignConfig::Load(config_file);
    if (!engine.empty()) c.engine = paramfuzz::ParseEngine(engine);
    if (!engines.empty()) {
      c.engines.clear();
      for (const std::string& e : engines) c.engines.push_back(paramfuzz::ParseEngine(e));
    }
    if (!target.empty()) c.target = target;
    if (!generator.empty()) c.generator = generator;
    if (!budget.empty()) c.budget = paramfuzz::Budget::Parse(budget);
    if (seed_opt->count() > 0) c.seed = seed;
    if (!seed_inputs.empty()) c.seed_inputs.assign(seed_inputs.begin(), seed_inputs.end());
    if (!out.empty()) c.out_dir = out;
    if (!literal_pool.empty()) c.literal_pool = literal_pool;
    if (mean_count > 0) c.mutation.mean_count = mean_count;
    if (mean_length > 0) c.mutation.mean_length = mean_length;
    if (sequence_cap > 0) c.sequence_cap = sequence_cap;
    if (reps > 0) c.repetitions = reps;
    if (warnings_opt->count() > 0) c.warnings_as_invalid = warnings_as_invalid;
    if (dispersion == "ci95") c.dispersion = paramfuzz::Dispersion::kCi95;
    if (dispersion == "minmax") c.dispersion = paramfuzz::Dispersion::kMinMax;
    if (c.out_dir.empty()) throw paramfuzz::ConfigError("--out is required");
    return c;
  }
};

int Run(const CampaignFlags& flags) {
  const CampaignConfig config = flags.Build();
  const paramfuzz::CampaignOutcome outcome = paramfuzz::RunCampaign(config);
  if (outcome.status == ExitStatus::kConfigError) {
    std::cerr << "error: " << outcome.error << "\n";
    return kConfigError;
  }
  const paramfuzz::StatsRecord& s = outcome.result.final_stats;
  std::printf("execs %llu  valid %llu  invalid %llu  failures %llu  coverage %zu (semantic %zu, %.1f%%)  corpus %zu\n",
              static_cast<unsigned long long>(s.execs), static_cast<unsigned long long>(s.valid),
              static_cast<unsigned long long>(s.invalid), static_cast<unsigned long long>(s.failures),
              s.total_cov, s.sem_cov, 100 * s.sem_ratio, outcome.result.corpus.size());
  for (const paramfuzz::FailureEntry& f : outcome.result.failures) {
    std::printf("failure %s  id %lld  t %.2fs  %s\n", f.key.Hash().c_str(),
                static_cast<long long>(f.sequence.id), f.t, f.key.ToString().c_str());
  }
  return static_cast<int>(outcome.status);
}

int Experiment(const CampaignFlags& flags) {
  const CampaignConfig config = flags.Build();
  const paramfuzz::ExperimentResult result = paramfuzz::RunExperiment(config);
  std::cout << result.report.Summary();
  return 0;
}

int Replay(const std::string& dir, const std::string& generator) {
  const paramfuzz::ReplaySummary summary = paramfuzz::ReplayCampaign(dir, generator);
  std::printf("replayed %zu entries, %zu match\n", summary.checked, summary.matched);
  for (const paramfuzz::ReplayCheck& c : summary.mismatches) {
    std::printf("mismatch %s id %lld: %s\n", c.failure_entry ? "failure" : "corpus",
                static_cast<long long>(c.id), c.detail.c_str());
  }
  return summary.mismatches.empty() ? 0 : 1;
}

int Report(const std::vector<std::string>& dirs, const std::string& out, const std::string& dispersion) {
  std::vector<fs::path> roots(dirs.begin(), dirs.end());
  size_t found = 0;
  for (const fs::path& root : roots) found += paramfuzz::FindCampaignDirs(root).size();
  if (found == 0) {
    std::cerr << "error: no campaign directories found\n";
    return 2;
  }
  const paramfuzz::ExperimentReport report = paramfuzz::ReportFromDirs(
      roots, dispersion == "ci95" ? paramfuzz::Dispersion::kCi95 : paramfuzz::Dispersion::kMinMax,
      out);
  std::cout << report.Summary();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paramfuzz: generator-based fuzzing with parametric generators"};
  app.require_subcommand(1);

  CampaignFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one campaign");
  run_flags.Register(run, /*experiment=*/false);

  CampaignFlags experiment_flags;
  CLI::App* experiment = app.add_subcommand("experiment", "repeated campaigns and a report");
  experiment_flags.Register(experiment, /*experiment=*/true);

  std::string replay_dir;
  std::string replay_generator;
  CLI::App* replay = app.add_subcommand("replay", "replay every saved entry of a campaign");
  replay->add_option("dir", replay_dir, "campaign directory")->required();
  replay->add_option("--generator", replay_generator, "replay with this generator instead");

  std::vector<std::string> report_dirs;
  std::string report_out;
  std::string report_dispersion = "minmax";
  CLI::App* report = app.add_subcommand("report", "rebuild metrics from campaign logs");
  report->add_option("dirs", report_dirs, "campaign or experiment directories")->required();
  report->add_option("--out", report_out, "write report.json and coverage.csv here");
  report->add_option("--dispersion", report_dispersion, "band: minmax or ci95")
      ->check(CLI::IsMember({"minmax", "ci95"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return Run(run_flags);
    if (experiment->parsed()) return Experiment(experiment_flags);
    if (replay->parsed()) return Replay(replay_dir, replay_generator);
    if (report->parsed()) return Report(report_dirs, report_out, report_dispersion);
  } catch (const paramfuzz::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
