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

// Programs under test and the harness contract that classifies their runs.
//
// A target is a two-stage pipeline: a syntax stage that parses the input text
// and a semantic stage that analyzes the parsed structure. The harness maps
// what happens during a run onto a RunOutcome:
//   * SyntaxRejection thrown        -> INVALID (documented parse error)
//   * SemanticRejection thrown      -> INVALID (documented model error, or a
//                                       violated harness assumption)
//   * any other exception           -> FAILURE, keyed for triage
//   * normal completion             -> VALID

#ifndef PARAMFUZZ_TARGET_H_
#define PARAMFUZZ_TARGET_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paramfuzz/coverage.h"

namespace paramfuzz {

enum class Result : uint8_t { kValid, kInvalid, kFailure };

std::string_view ResultName(Result result);
Result ParseResult(std::string_view name);

struct FailureKey {
  std::string error_type;
  std::string message;
  std::string location;

  auto operator<=>(const FailureKey&) const = default;
  bool operator==(const FailureKey&) const = default;

  // Stable 64-bit hash rendered as 16 hex digits.
  std::string Hash() const;
  std::string ToString() const;
};

enum class Stage : uint8_t { kNone, kSyntax, kSemantic };

struct RunOutcome {
  Result result = Result::kValid;
  CoverageSet coverage;
  std::optional<FailureKey> failure;
  // For INVALID runs, the stage that rejected the input.
  Stage rejected_by = Stage::kNone;
  std::string detail;

  bool operator==(const RunOutcome& o) const {
    return result == o.result && coverage == o.coverage && failure == o.failure;
  }
};

class SyntaxRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SemanticRejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An undocumented error raised inside target code. Carries its own triage
// identity.
class TargetFault : public std::runtime_error {
 public:
  TargetFault(std::string type, std::string message, std::string location)
      : std::runtime_error(type + ": " + message),
        key_{std::move(type), std::move(message), std::move(location)} {}

  const FailureKey& key() const { return key_; }

 private:
  FailureKey key_;
};

struct PlantedBug {
  FailureKey key;
  std::string description;
  Stage stage;
  // An input that triggers exactly this bug.
  std::string witness;
};

class Target {
 public:
  virtual ~Target() = default;

  virtual std::string_view name() const = 0;
  virtual const PointTable& points() const = 0;
  virtual const std::vector<PlantedBug>& planted_bugs() const = 0;

  // Runs both stages under the harness contract. `recorder` is cleared first.
  RunOutcome Execute(std::string_view input, CoverageRecorder& recorder) const;

  // True iff the syntax stage alone accepts `input` (returns normally).
  virtual bool AcceptsSyntax(std::string_view input) const = 0;

 protected:
  // Throws SyntaxRejection / SemanticRejection for documented rejections.
  virtual void Run(std::string_view input, CoverageRecorder& recorder) const = 0;
};

}  // namespace paramfuzz

#endif  // PARAMFUZZ_TARGET_H_
