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


// Python bindings: generation, execution, mutation, campaigns, replay and
// reports. Campaign configurations cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "paramfuzz/campaign.h"
#include "paramfuzz/engine.h"
#include "paramfuzz/generator.h"
#include "paramfuzz/mutation.h"
#include "paramfuzz/targets.h"

namespace py = pybind11;

namespace paramfuzz {
namespace {

Bytes ToBytes(const py::bytes& b) {
  const std::string s = b;
  return Bytes(s.begin(), s.end());
}

py::bytes FromBytes(const Bytes& b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

// Returns (text, octets consumed including extension).
py::tuple Generate(const std::string& generator, const py::bytes& params, py::object extension_seed) {
  auto gen = MakeGenerator(generator);
  ParameterSequence seq{ToBytes(params)};
  std::optional<ExtensionStream> stream;
  if (!extension_seed.is_none()) stream.emplace(extension_seed.cast<uint64_t>());
  ParametricSource source(seq, stream ? &*stream : nullptr);
  const std::string text = gen->Generate(source).text;
  return py::make_tuple(text, FromBytes(seq.bytes));
}

py::dict Execute(const std::string& target_name, const std::string& input, bool warnings_as_invalid) {
  CampaignConfig config;
  config.target = target_name;
  config.warnings_as_invalid = warnings_as_invalid;
  auto target = BuildTarget(config);
  CoverageRecorder recorder;
  const RunOutcome out = target->Execute(input, recorder);
  py::dict d;
  d["result"] = std::string(ResultName(out.result));
  d["coverage"] = out.coverage.ids();
  d["semantic"] = out.coverage.CountRegion(Region::kSemantic);
  if (out.failure) {
    d["failure"] = py::make_tuple(out.failure->error_type, out.failure->message, out.failure->location);
  } else {
    d["failure"] = py::none();
  }
  d["stage"] = out.rejected_by == Stage::kSyntax     ? "syntax"
               : out.rejected_by == Stage::kSemantic ? "semantic"
                                                     : "";
  return d;
}

py::dict Run(const std::string& config_json) {
  CampaignOutcome outcome;
  try {
    const CampaignConfig config = CampaignConfig::FromJson(config_json);
    config.Validate(false);
    outcome = RunCampaign(config);
  } catch (const ConfigError& e) {
    outcome.status = ExitStatus::kConfigError;
    outcome.error = e.what();
  }
  const StatsRecord& s = outcome.result.final_stats;
  py::dict d;
  d["status"] = static_cast<int>(outcome.status);
  d["error"] = outcome.error;
  d["execs"] = s.execs;
  d["valid"] = s.valid;
  d["corpus"] = outcome.result.corpus.size();
  d["total_coverage"] = s.total_cov;
  d["semantic_coverage"] = s.sem_cov;
  py::list failures;
  for (const FailureEntry& f : outcome.result.failures) {
    failures.append(py::make_tuple(f.key.error_type, f.key.message, f.key.location, f.t));
  }
  d["failures"] = failures;
  return d;
}

}  // namespace
}  // namespace paramfuzz

PYBIND11_MODULE(_paramfuzz, m) {
  using namespace paramfuzz;
  m.doc() = "Parametric generators and coverage-guided search";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("target_names", &TargetNames);
  m.def("default_generator", [](const std::string& t) { return DefaultGeneratorFor(t); });
  m.def("generate", &Generate, py::arg("generator"), py::arg("params"),
        py::arg("extension_seed") = py::none(),
        "Runs a generator on a parameter sequence; returns (text, parameters used).");
  m.def("execute", &Execute, py::arg("target"), py::arg("input"),
        py::arg("warnings_as_invalid") = false);
  m.def(
      "planted_bugs",
      [](const std::string& t) {
        py::list out;
        const auto target = MakeTarget(t);
        for (const PlantedBug& b : target->planted_bugs()) {
          out.append(py::make_tuple(b.key.error_type, b.key.message, b.key.location, b.witness));
        }
        return out;
      },
      py::arg("target"));
  m.def(
      "mutate",
      [](const py::bytes& parent, uint64_t seed, double mean_count, double mean_length) {
        Mutator mutator({mean_count, mean_length, seed});
        return FromBytes(mutator.Mutate(ToBytes(parent)));
      },
      py::arg("parent"), py::arg("seed") = 0, py::arg("mean_count") = 4.0, py::arg("mean_length") = 4.0);
  m.def("run_campaign", &Run, py::arg("config_json"),
        "Runs one campaign from a JSON configuration and writes its artifacts.");
  m.def(
      "replay",
      [](const std::filesystem::path& dir) {
        const ReplaySummary s = ReplayCampaign(dir);
        return py::make_tuple(s.checked, s.matched);
      },
      py::arg("dir"));
  m.def(
      "report",
      [](const std::vector<std::filesystem::path>& roots, const std::filesystem::path& out) {
        return ReportFromDirs(roots, Dispersion::kMinMax, out).ToJson();
      },
      py::arg("roots"), py::arg("out") = std::filesystem::path());
}
