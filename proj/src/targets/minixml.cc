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

#include "paramfuzz/targets.h"
#include "targets/minixml_internal.h"

namespace paramfuzz {
namespace {

class MiniXmlTarget final : public Target {
 public:
  MiniXmlTarget() {
    table_.syntax_points = 2 * minixml::ParserSiteCount();
    table_.semantic_points = 2 * minixml::ModelSiteCount();
    bugs_ = {
        {{"IllegalStateException", "Unknown reference \"null\"", "ProjectModel::Augment"},
         "<augment> without an id attribute dereferences a null reference",
         Stage::kSemantic,
         "<project><augment /></project>"},
        {{"AssertionError", "project description bound twice", "ProjectModel::Finalize"},
         "a second <description> rebinds the singleton and corrupts the project",
         Stage::kSemantic,
         "<project><description>a</description><description>b</description></project>"},
        {{"StackOverflowError", "dependency recursion too deep", "ProjectModel::Plan"},
         "the cycle check ignores a target that depends on itself",
         Stage::kSemantic,
         "<project><target name=\"a\" depends=\"a\" /></project>"},
        {{"NumberFormatException", "For input string: \"\"", "minixml::ParseInt"},
         "a character reference with no digits reaches the strict number parser",
         Stage::kSyntax,
         "<project>&#;</project>"},
    };
  }

  std::string_view name() const override { return "minixml"; }
  const PointTable& points() const override { return table_; }
  const std::vector<PlantedBug>& planted_bugs() const override { return bugs_; }

  bool AcceptsSyntax(std::string_view input) const override {
    CoverageRecorder scratch;
    try {
      minixml::ParseDocument(input, scratch);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

 protected:
  void Run(std::string_view input, CoverageRecorder& recorder) const override {
    const minixml::Element root = minixml::ParseDocument(input, recorder);
    minixml::BuildAndRunProject(root, recorder);
  }

 private:
  PointTable table_;
  std::vector<PlantedBug> bugs_;
};

}  // namespace

std::unique_ptr<Target> MakeMiniXmlTarget() { return std::make_unique<MiniXmlTarget>(); }

}  // namespace paramfuzz
