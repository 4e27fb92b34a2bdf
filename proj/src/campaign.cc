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


#include "paramfuzz/campaign.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "paramfuzz/artifacts.h"
#include "paramfuzz/hash.h"
#include "paramfuzz/targets.h"

namespace paramfuzz {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string StageName(Stage stage) {
  switch (stage) {
    case Stage::kSyntax:
      return "syntax";
    case Stage::kSemantic:
      return "semantic";
    case Stage::kNone:
      break;
  }
  return "none";
}

json KeyJson(const FailureKey& key) {
  return {{"type", key.error_type}, {"message", key.message}, {"location", key.location}};
}

void WriteText(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  out << text;
  if (!out) throw ConfigError("cannot write " + file.string());
}

std::string ReadText(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string PlantedBugsJson(const Target& target) {
  json bugs = json::array();
  for (const PlantedBug& bug : target.planted_bugs()) {
    bugs.push_back({{"key", KeyJson(bug.key)},
                    {"hash", bug.key.Hash()},
                    {"stage", StageName(bug.stage)},
                    {"description", bug.description},
                    {"witness", bug.witness}});
  }
  return json({{"target", target.name()}, {"bugs", bugs}}).dump(2) + "\n";
}

// Mean and band of `values` (nonempty).
void Band(const std::vector<double>& values, Dispersion dispersion, double& mean, double& lo,
          double& hi) {
  double sum = 0;
  for (double v : values) sum += v;
  mean = sum / static_cast<double>(values.size());
  if (dispersion == Dispersion::kMinMax || values.size() < 2) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
    return;
  }
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  const double half = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
  lo = mean - half;
  hi = mean + half;
}

}  // namespace

// ---- configuration ----

std::string CampaignConfig::GeneratorName() const {
  if (!generator.empty()) return generator;
  return std::string(DefaultGeneratorFor(target));
}

void CampaignConfig::Validate(bool experiment) const {
  const auto names = TargetNames();
  if (std::find(names.begin(), names.end(), target) == names.end()) {
    throw ConfigError("unknown target '" + target + "'");
  }
  if (generator != "" && generator != "xml" && generator != "script") {
    throw ConfigError("unknown generator '" + generator + "'");
  }
  if (GeneratorName() != DefaultGeneratorFor(target)) {
    throw ConfigError("generator '" + GeneratorName() + "' does not produce input for target '" +
                      target + "'");
  }
  if (!(mutation.mean_count >= 1) || !(mutation.mean_length >= 1)) {
    throw ConfigError("mutation means must be >= 1");
  }
  if (sequence_cap == 0) throw ConfigError("sequence cap must be positive");
  if (!(budget.amount > 0)) throw ConfigError("budget must be positive");
  if (experiment) {
    if (repetitions < 2) throw ConfigError("an experiment needs at least 2 repetitions");
    if (engines.empty()) throw ConfigError("an experiment needs at least one engine");
    if (dispersion == Dispersion::kCi95 && repetitions < 20) {
      throw ConfigError("confidence bands need at least 20 repetitions; use minmax");
    }
  } else if (engine == EngineKind::kCgf && seed_inputs.empty()) {
    throw ConfigError("--engine cgf needs at least one --seed-input");
  }
  for (const fs::path& p : seed_inputs) {
    if (!fs::is_regular_file(p)) throw ConfigError("seed input not found: " + p.string());
  }
  if (!literal_pool.empty() && !fs::is_regular_file(literal_pool)) {
    throw ConfigError("literal pool not found: " + literal_pool.string());
  }
}

std::string CampaignConfig::ToJson() const {
  json engine_list = json::array();
  for (EngineKind e : engines) engine_list.push_back(EngineName(e));
  json seeds = json::array();
  for (const fs::path& p : seed_inputs) seeds.push_back(p.string());
  json j = {{"engine", EngineName(engine)},
            {"engines", engine_list},
            {"target", target},
            {"generator", GeneratorName()},
            {"seed", seed},
            {"budget", budget.ToString()},
            {"mutation", {{"meanCount", mutation.mean_count}, {"meanLength", mutation.mean_length}}},
            {"sequenceCap", sequence_cap},
            {"seedInputs", seeds},
            {"literalPool", literal_pool.string()},
            {"warningsAsInvalid", warnings_as_invalid},
            {"out", out_dir.string()},
            {"repetitions", repetitions},
            {"dispersion", dispersion == Dispersion::kMinMax ? "minmax" : "ci95"}};
  return j.dump(2) + "\n";
}

CampaignConfig CampaignConfig::FromJson(const std::string& text) {
  static const std::set<std::string> kKeys = {
      "engine",      "engines",     "target",            "generator", "seed",
      "budget",      "mutation",    "sequenceCap",       "seedInputs", "literalPool",
      "warningsAsInvalid", "out",   "repetitions",       "dispersion"};
  CampaignConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (j.contains("engine")) c.engine = ParseEngine(j["engine"].get<std::string>());
    if (j.contains("engines")) {
      c.engines.clear();
      for (const auto& e : j["engines"]) c.engines.push_back(ParseEngine(e.get<std::string>()));
    }
    if (j.contains("target")) c.target = j["target"].get<std::string>();
    if (j.contains("generator")) c.generator = j["generator"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("budget")) c.budget = Budget::Parse(j["budget"].get<std::string>());
    if (j.contains("mutation")) {
      c.mutation.mean_count = j["mutation"].value("meanCount", c.mutation.mean_count);
      c.mutation.mean_length = j["mutation"].value("meanLength", c.mutation.mean_length);
    }
    if (j.contains("sequenceCap")) c.sequence_cap = j["sequenceCap"].get<size_t>();
    if (j.contains("seedInputs")) {
      for (const auto& p : j["seedInputs"]) c.seed_inputs.emplace_back(p.get<std::string>());
    }
    if (j.contains("literalPool")) c.literal_pool = j["literalPool"].get<std::string>();
    if (j.contains("warningsAsInvalid")) c.warnings_as_invalid = j["warningsAsInvalid"].get<bool>();
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("repetitions")) c.repetitions = j["repetitions"].get<int>();
    if (j.contains("dispersion")) {
      const std::string d = j["dispersion"].get<std::string>();
      if (d == "minmax") {
        c.dispersion = Dispersion::kMinMax;
      } else if (d == "ci95") {
        c.dispersion = Dispersion::kCi95;
      } else {
        throw ConfigError("unknown dispersion '" + d + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

CampaignConfig CampaignConfig::Load(const fs::path& file) { return FromJson(ReadText(file)); }

std::unique_ptr<Target> BuildTarget(const CampaignConfig& config) {
  if (config.target == "miniscript") {
    return MakeMiniScriptTarget({.warnings_as_invalid = config.warnings_as_invalid});
  }
  return MakeTarget(config.target);
}

std::unique_ptr<Generator> BuildGenerator(const CampaignConfig& config) {
  const std::string name = config.GeneratorName();
  GeneratorConfig gc = name == "xml" ? DefaultXmlConfig() : DefaultScriptConfig();
  if (!config.literal_pool.empty()) {
    std::vector<std::string> pool = LoadLiteralPool(config.literal_pool.string());
    if (name == "xml") {
      gc.names = std::move(pool);
    } else {
      gc.values = std::move(pool);
    }
  }
  return MakeGenerator(name, std::move(gc));
}

Bytes FirstValidInput(const Target& target, const Generator& generator, uint64_t seed,
                      int max_attempts) {
  ExtensionStream extension(SplitMix64(seed ^ 0x736565640000ULL));
  CoverageRecorder recorder;
  for (int i = 0; i < max_attempts; ++i) {
    ParameterSequence sequence;
    ParametricSource source(sequence, &extension);
    const std::string text = generator.Generate(source).text;
    if (target.Execute(text, recorder).result == Result::kValid) return Bytes(text.begin(), text.end());
  }
  throw ConfigError("no VALID input found for the byte-level seed");
}

CampaignOutcome RunCampaign(const CampaignConfig& config, const ExecutionObserver& observer) {
  CampaignOutcome outcome;
  try {
    config.Validate(/*experiment=*/false);
    auto target = BuildTarget(config);
    auto generator = BuildGenerator(config);
    EngineOptions options;
    options.seed = config.seed;
    options.budget = config.budget;
    options.mutation = config.mutation;
    options.sequence_cap = config.sequence_cap;
    options.out_dir = config.out_dir;
    options.observer = observer;
    if (!config.out_dir.empty()) {
      std::error_code ec;
      fs::create_directories(config.out_dir, ec);
      if (ec) throw ConfigError("cannot create " + config.out_dir.string() + ": " + ec.message());
      WriteText(config.out_dir / "campaign.json", config.ToJson());
      WriteText(config.out_dir / "planted_bugs.json", PlantedBugsJson(*target));
    }
    switch (config.engine) {
      case EngineKind::kZest:
        outcome.result = RunZest(*target, *generator, options);
        break;
      case EngineKind::kQuickCheck:
        outcome.result = RunQuickCheck(*target, *generator, options);
        break;
      case EngineKind::kCgf: {
        std::vector<Bytes> seeds;
        for (const fs::path& p : config.seed_inputs) seeds.push_back(ReadBytes(p));
        outcome.result = RunCgf(*target, seeds, options);
        break;
      }
    }
    outcome.status = outcome.result.failures.empty() ? ExitStatus::kClean : ExitStatus::kFailureFound;
  } catch (const ConfigError& e) {
    outcome.status = ExitStatus::kConfigError;
    outcome.error = e.what();
  } catch (const std::invalid_argument& e) {
    outcome.status = ExitStatus::kConfigError;
    outcome.error = e.what();
  } catch (const std::runtime_error& e) {
    outcome.status = ExitStatus::kConfigError;
    outcome.error = e.what();
  }
  return outcome;
}

// ---- reports ----

StatsRecord StatsAt(const std::vector<StatsRecord>& stats, double t) {
  StatsRecord out;
  for (const StatsRecord& s : stats) {
    if (s.t > t) break;
    out = s;
  }
  return out;
}

CellData CellFromResult(const std::string& target, EngineKind engine, int rep,
                        const CampaignResult& result) {
  CellData cell;
  cell.target = target;
  cell.engine = engine;
  cell.rep = rep;
  cell.completed = true;
  cell.stats = result.stats;
  for (const FailureEntry& f : result.failures) cell.first_found.emplace(f.key, f.t);
  return cell;
}

CellData CellFromDir(const fs::path& dir) {
  CellData cell;
  const std::string name = dir.filename().string();
  if (name.rfind("rep_", 0) == 0) cell.rep = std::atoi(name.c_str() + 4);
  try {
    const json config = json::parse(ReadText(dir / "campaign.json"));
    cell.target = config.at("target").get<std::string>();
    cell.engine = ParseEngine(config.at("engine").get<std::string>());
    if (!fs::exists(dir / "summary.json")) throw LogError("campaign did not finish");
    cell.stats = ReadStats(dir / "stats.jsonl");
    // First occurrence of each key in the event log; its time is the stats
    // record emitted right after that execution.
    ForEachEvent(dir / "events.jsonl", [&cell](const EventRecord& e) {
      if (!e.failure || cell.first_found.contains(*e.failure)) return;
      const uint64_t execs = static_cast<uint64_t>(e.exec_index) + 1;
      auto it = std::find_if(cell.stats.begin(), cell.stats.end(),
                             [&](const StatsRecord& s) { return s.execs == execs; });
      if (it == cell.stats.end()) {
        throw LogError("no stats record for execution " + std::to_string(e.exec_index));
      }
      cell.first_found.emplace(*e.failure, it->t);
    });
    cell.completed = true;
  } catch (const std::exception& e) {
    cell.completed = false;
    cell.error = e.what();
  }
  return cell;
}

std::vector<fs::path> FindCampaignDirs(const fs::path& root) {
  std::vector<fs::path> dirs;
  if (fs::exists(root / "campaign.json")) dirs.push_back(root);
  std::error_code ec;
  for (auto it = fs::recursive_directory_iterator(root, ec); it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (ec) break;
    if (it->is_directory() && fs::exists(it->path() / "campaign.json")) dirs.push_back(it->path());
  }
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  return dirs;
}

ExperimentReport BuildReport(const std::vector<CellData>& cells, Dispersion dispersion) {
  ExperimentReport report;
  std::map<std::string, std::map<EngineKind, std::vector<const CellData*>>> groups;
  for (const CellData& cell : cells) {
    if (!cell.completed) {
      report.errors.push_back(cell.target + "/" + std::string(EngineName(cell.engine)) + "/rep_" +
                              std::to_string(cell.rep) + ": " + cell.error);
      continue;
    }
    groups[cell.target][cell.engine].push_back(&cell);
  }
  for (const auto& [target_name, engines] : groups) {
    std::map<FailureKey, Stage> keys;
    std::unique_ptr<Target> target;
    try {
      target = MakeTarget(target_name);
      for (const PlantedBug& bug : target->planted_bugs()) keys[bug.key] = bug.stage;
    } catch (const std::invalid_argument&) {
    }
    double end = 0;
    for (const auto& [engine, group] : engines) {
      for (const CellData* c : group) {
        for (const auto& [key, t] : c->first_found) keys.try_emplace(key, Stage::kNone);
        if (!c->stats.empty()) end = std::max(end, c->stats.back().t);
      }
    }
    for (const auto& [engine, group] : engines) {
      for (const auto& [key, stage] : keys) {
        BugRow row{target_name, engine, key, stage != Stage::kNone, stage, 0, 0, 0.0, std::nullopt};
        row.reps = static_cast<int>(group.size());
        double sum = 0;
        for (const CellData* c : group) {
          auto it = c->first_found.find(key);
          if (it == c->first_found.end()) continue;
          ++row.found;
          sum += it->second;
        }
        row.reliability = static_cast<double>(row.found) / row.reps;
        if (row.found > 0) row.mtf = sum / row.found;
        report.bugs.push_back(row);
      }
      const int steps = static_cast<int>(std::ceil(end));
      for (int i = 0; i <= steps; ++i) {
        SeriesRow row{target_name, engine, static_cast<double>(i)};
        row.n = static_cast<int>(group.size());
        std::vector<double> total, sem;
        for (const CellData* c : group) {
          const StatsRecord s = StatsAt(c->stats, row.t);
          total.push_back(static_cast<double>(s.total_cov));
          sem.push_back(static_cast<double>(s.sem_cov));
        }
        Band(total, dispersion, row.total_mean, row.total_lo, row.total_hi);
        Band(sem, dispersion, row.sem_mean, row.sem_lo, row.sem_hi);
        report.series.push_back(row);
      }
    }
  }
  return report;
}

std::string ExperimentReport::ToJson() const {
  json rows = json::array();
  for (const BugRow& b : bugs) {
    rows.push_back({{"target", b.target},
                    {"engine", EngineName(b.engine)},
                    {"key", KeyJson(b.key)},
                    {"hash", b.key.Hash()},
                    {"planted", b.planted},
                    {"stage", StageName(b.stage)},
                    {"found", b.found},
                    {"reps", b.reps},
                    {"reliability", b.reliability},
                    {"mtf", b.mtf ? json(*b.mtf) : json(nullptr)}});
  }
  json final_rows = json::array();
  for (size_t i = 0; i < series.size(); ++i) {
    const bool last = i + 1 == series.size() || series[i + 1].target != series[i].target ||
                      series[i + 1].engine != series[i].engine;
    if (!last) continue;
    const SeriesRow& s = series[i];
    final_rows.push_back({{"target", s.target},
                          {"engine", EngineName(s.engine)},
                          {"t", s.t},
                          {"n", s.n},
                          {"totalCov", {s.total_mean, s.total_lo, s.total_hi}},
                          {"semCov", {s.sem_mean, s.sem_lo, s.sem_hi}}});
  }
  return json({{"bugs", rows}, {"finalCoverage", final_rows}, {"errors", errors}}).dump(2) + "\n";
}

std::string ExperimentReport::SeriesCsv() const {
  std::string out = "target,engine,t,n,total_mean,total_lo,total_hi,sem_mean,sem_lo,sem_hi\n";
  char buf[256];
  for (const SeriesRow& s : series) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%g,%d,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                  s.target.c_str(), std::string(EngineName(s.engine)).c_str(), s.t, s.n,
                  s.total_mean, s.total_lo, s.total_hi, s.sem_mean, s.sem_lo, s.sem_hi);
    out += buf;
  }
  return out;
}

std::string ExperimentReport::Summary() const {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%-11s %-11s %-9s %-70s %8s %9s\n", "target", "engine", "stage",
                "failure", "reliab.", "MTF");
  out += buf;
  for (const BugRow& b : bugs) {
    char mtf[32] = "x";
    if (b.mtf) std::snprintf(mtf, sizeof(mtf), "%.2fs", *b.mtf);
    std::snprintf(buf, sizeof(buf), "%-11s %-11s %-9s %-70s %7.0f%% %9s\n", b.target.c_str(),
                  std::string(EngineName(b.engine)).c_str(),
                  b.planted ? StageName(b.stage).c_str() : "unplanned",
                  b.key.ToString().substr(0, 70).c_str(), 100 * b.reliability, mtf);
    out += buf;
  }
  for (size_t i = 0; i < series.size(); ++i) {
    const bool last = i + 1 == series.size() || series[i + 1].target != series[i].target ||
                      series[i + 1].engine != series[i].engine;
    if (!last) continue;
    const SeriesRow& s = series[i];
    std::snprintf(buf, sizeof(buf),
                  "coverage %-11s %-11s t=%gs  total %.1f [%.0f, %.0f]  semantic %.1f [%.0f, %.0f]\n",
                  s.target.c_str(), std::string(EngineName(s.engine)).c_str(), s.t, s.total_mean,
                  s.total_lo, s.total_hi, s.sem_mean, s.sem_lo, s.sem_hi);
    out += buf;
  }
  for (const std::string& e : errors) out += "error: " + e + "\n";
  return out;
}

ExperimentResult RunExperiment(const CampaignConfig& config) {
  config.Validate(/*experiment=*/true);
  ExperimentResult result;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw ConfigError("cannot create " + config.out_dir.string() + ": " + ec.message());

  std::vector<fs::path> seeds = config.seed_inputs;
  if (seeds.empty() && std::find(config.engines.begin(), config.engines.end(), EngineKind::kCgf) !=
                           config.engines.end()) {
    auto target = BuildTarget(config);
    auto generator = BuildGenerator(config);
    const fs::path seed_file = config.out_dir / "seeds" / (config.target + ".bin");
    fs::create_directories(seed_file.parent_path());
    WriteBytes(seed_file, FirstValidInput(*target, *generator, config.seed));
    seeds.push_back(seed_file);
  }

  for (int rep = 0; rep < config.repetitions; ++rep) {
    for (EngineKind engine : config.engines) {
      CampaignConfig cell_config = config;
      cell_config.engine = engine;
      cell_config.seed = DeriveSeed(config.seed, static_cast<uint64_t>(rep));
      cell_config.seed_inputs = seeds;
      cell_config.out_dir =
          config.out_dir / std::string(EngineName(engine)) / ("rep_" + std::to_string(rep));
      CampaignOutcome outcome = RunCampaign(cell_config);
      if (outcome.status == ExitStatus::kConfigError) {
        CellData cell;
        cell.target = config.target;
        cell.engine = engine;
        cell.rep = rep;
        cell.error = outcome.error;
        result.cells.push_back(cell);
      } else {
        result.cells.push_back(CellFromResult(config.target, engine, rep, outcome.result));
      }
    }
  }
  result.report = BuildReport(result.cells, config.dispersion);
  WriteText(config.out_dir / "report.json", result.report.ToJson());
  WriteText(config.out_dir / "coverage.csv", result.report.SeriesCsv());
  return result;
}

ReplaySummary ReplayCampaign(const fs::path& dir, const std::string& generator_override) {
  const CampaignConfig config = CampaignConfig::Load(dir / "campaign.json");
  CampaignConfig build = config;
  if (!generator_override.empty()) build.generator = generator_override;
  auto target = BuildTarget(config);
  const bool raw = config.engine == EngineKind::kCgf;
  std::unique_ptr<Generator> generator;
  if (!raw) {
    if (build.generator != "xml" && build.generator != "script" && !build.generator.empty()) {
      throw ConfigError("unknown generator '" + build.generator + "'");
    }
    generator = BuildGenerator(build);
  }

  ReplaySummary summary;
  auto check = [&](const fs::path& file, const IndexRecord& record, bool failure_entry) {
    ReplayCheck c{record.id, failure_entry, false, ""};
    const Bytes bytes = ReadBytes(file);
    const RunOutcome outcome =
        raw ? ReplayRaw(*target, bytes)
            : Replay(*target, *generator, ParameterSequence{bytes, record.id}, record.fingerprint);
    if (outcome.result != record.result) {
      c.detail = "result " + std::string(ResultName(outcome.result)) + " != recorded " +
                 std::string(ResultName(record.result));
    } else if (outcome.coverage.ids() != record.coverage) {
      c.detail = "coverage differs";
    } else if (outcome.failure != record.failure) {
      c.detail = "failure key differs";
    } else {
      c.match = true;
    }
    ++summary.checked;
    if (c.match) {
      ++summary.matched;
    } else {
      summary.mismatches.push_back(c);
    }
  };
  for (const IndexRecord& r : ReadIndex(dir / "corpus" / "index.jsonl")) {
    check(dir / "corpus" / r.file, r, false);
  }
  for (const IndexRecord& r : ReadIndex(dir / "failures" / "index.jsonl")) {
    check(dir / "failures" / r.file, r, true);
  }
  return summary;
}

ExperimentReport ReportFromDirs(const std::vector<fs::path>& roots, Dispersion dispersion,
                                const fs::path& out) {
  std::vector<CellData> cells;
  for (const fs::path& root : roots) {
    for (const fs::path& dir : FindCampaignDirs(root)) cells.push_back(CellFromDir(dir));
  }
  ExperimentReport report = BuildReport(cells, dispersion);
  if (!out.empty()) {
    fs::create_directories(out);
    WriteText(out / "report.json", report.ToJson());
    WriteText(out / "coverage.csv", report.SeriesCsv());
  }
  return report;
}

}  // namespace paramfuzz
