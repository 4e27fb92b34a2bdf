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

#include <stdexcept>

#include "paramfuzz/targets.h"
#include "targets/miniscript_internal.h"

namespace paramfuzz {
namespace {

class MiniScriptTarget final : public Target {
 public:
  explicit MiniScriptTarget(ScriptTargetOptions options) : options_(options) {
    table_.syntax_points = 2 * miniscript::ParserSiteCount();
    table_.semantic_points = 2 * miniscript::CompilerSiteCount();
    bugs_ = {
        {{"NullPointerException", "null dereference", "ArrowNormalizer::InlineBody"},
         "an arrow whose body is an undeclared identifier is normalized before the "
         "undeclared-variable check",
         Stage::kSemantic,
         "((l_0) => l_1);"},
        {{"IllegalStateException", "Unexpected undefined receiver in call", "PeepholeFold::TryFoldCall"},
         "folding a call evaluates a property of undefined at compile time",
         Stage::kSemantic,
         "((undefined)[undefined])();"},
        {{"IllegalStateException", "Unexpected variable declaration in dead code",
          "DeadCodeEliminator::RemoveUnreachable"},
         "a hoisted var after break is treated as removable dead code",
         Stage::kSemantic,
         "while (true) { break;; var l_0; continue; }"},
    };
  }

  std::string_view name() const override { return "miniscript"; }
  const PointTable& points() const override { return table_; }
  const std::vector<PlantedBug>& planted_bugs() const override { return bugs_; }

  bool AcceptsSyntax(std::string_view input) const override {
    CoverageRecorder scratch;
    try {
      miniscript::ParseProgram(input, scratch);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

 protected:
  void Run(std::string_view input, CoverageRecorder& recorder) const override {
    miniscript::NodePtr program = miniscript::ParseProgram(input, recorder);
    miniscript::Compile(*program, {.warnings_as_invalid = options_.warnings_as_invalid}, recorder);
  }

 private:
  ScriptTargetOptions options_;
  PointTable table_;
  std::vector<PlantedBug> bugs_;
};

}  // namespace

std::unique_ptr<Target> MakeMiniScriptTarget(ScriptTargetOptions options) {
  return std::make_unique<MiniScriptTarget>(options);
}

std::unique_ptr<Target> MakeTarget(std::string_view name) {
  if (name == "minixml") return MakeMiniXmlTarget();
  if (name == "miniscript") return MakeMiniScriptTarget();
  throw std::invalid_argument("unknown target: " + std::string(name));
}

std::vector<std::string> TargetNames() { return {"minixml", "miniscript"}; }

std::string_view DefaultGeneratorFor(std::string_view target) {
  if (target == "minixml") return "xml";
  if (target == "miniscript") return "script";
  throw std::invalid_argument("unknown target: " + std::string(target));
}

}  // namespace paramfuzz
