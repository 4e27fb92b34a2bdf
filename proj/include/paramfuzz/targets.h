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

// Built-in instrumented targets.
//
//   minixml     well-formedness parser + build-file model (Ant-like)
//   miniscript  parser + scope/fold/dead-code/emit compiler for the script
//               subset produced by the "script" generator

#ifndef PARAMFUZZ_TARGETS_H_
#define PARAMFUZZ_TARGETS_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "paramfuzz/target.h"

namespace paramfuzz {

struct ScriptTargetOptions {
  // Treat compiler warnings as INVALID instead of VALID.
  bool warnings_as_invalid = false;
};

std::unique_ptr<Target> MakeMiniXmlTarget();
std::unique_ptr<Target> MakeMiniScriptTarget(ScriptTargetOptions options = {});

// "minixml" or "miniscript"; throws std::invalid_argument otherwise.
std::unique_ptr<Target> MakeTarget(std::string_view name);

std::vector<std::string> TargetNames();

// The generator whose output each built-in target consumes.
std::string_view DefaultGeneratorFor(std::string_view target);

}  // namespace paramfuzz

#endif  // PARAMFUZZ_TARGETS_H_
