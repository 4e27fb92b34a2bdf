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

#include "paramfuzz/target.h"

#include <cxxabi.h>

#include <cstdlib>
#include <memory>
#include <typeinfo>

#include "paramfuzz/hash.h"

namespace paramfuzz {
namespace {

std::string Demangle(const char* name) {
  int status = 0;
  std::unique_ptr<char, void (*)(void*)> demangled(
      abi::__cxa_demangle(name, nullptr, nullptr, &status), std::free);
  return status == 0 && demangled ? std::string(demangled.get()) : std::string(name);
}

std::string SiteLocation(const CoverageRecorder& recorder) {
  const int64_t last = recorder.last_point();
  if (last < 0) return "entry";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "point:0x%04llx", static_cast<long long>(last));
  return buf;
}

}  // namespace

std::string_view ResultName(Result result) {
  switch (result) {
    case Result::kValid:
      return "VALID";
    case Result::kInvalid:
      return "INVALID";
    case Result::kFailure:
      return "FAILURE";
  }
  return "FAILURE";
}

Result ParseResult(std::string_view name) {
  if (name == "VALID") return Result::kValid;
  if (name == "INVALID") return Result::kInvalid;
  if (name == "FAILURE") return Result::kFailure;
  throw std::invalid_argument("unknown result '" + std::string(name) + "'");
}

std::string FailureKey::Hash() const {
  uint64_t h = Fnv1a(error_type);
  h = Fnv1a(std::string_view("\0", 1), h);
  h = Fnv1a(message, h);
  h = Fnv1a(std::string_view("\0", 1), h);
  h = Fnv1a(location, h);
  return Hex64(h);
}

std::string FailureKey::ToString() const {
  return error_type + ": " + message + " @ " + location;
}

RunOutcome Target::Execute(std::string_view input, CoverageRecorder& recorder) const {
  RunOutcome outcome;
  recorder.Begin();
  try {
    Run(input, recorder);
    outcome.result = Result::kValid;
  } catch (const SyntaxRejection& e) {
    outcome.result = Result::kInvalid;
    outcome.rejected_by = Stage::kSyntax;
    outcome.detail = e.what();
  } catch (const SemanticRejection& e) {
    outcome.result = Result::kInvalid;
    outcome.rejected_by = Stage::kSemantic;
    outcome.detail = e.what();
  } catch (const TargetFault& e) {
    outcome.result = Result::kFailure;
    outcome.failure = e.key();
  } catch (const std::exception& e) {
    outcome.result = Result::kFailure;
    outcome.failure = FailureKey{Demangle(typeid(e).name()), e.what(),
                                 SiteLocation(recorder)};
  }
  outcome.coverage = recorder.End();
  return outcome;
}

}  // namespace paramfuzz
