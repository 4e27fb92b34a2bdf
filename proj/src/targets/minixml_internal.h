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

#ifndef PARAMFUZZ_SRC_TARGETS_MINIXML_INTERNAL_H_
#define PARAMFUZZ_SRC_TARGETS_MINIXML_INTERNAL_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paramfuzz/coverage.h"

namespace paramfuzz::minixml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  // Concatenated character data, entities decoded.
  std::string text;

  const std::string* Attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

// Stage 1: well-formedness parser. Throws SyntaxRejection.
Element ParseDocument(std::string_view input, CoverageRecorder& cov);
PointId ParserSiteCount();

// Stage 2: schema validation, model building and plan execution. Throws
// SemanticRejection.
void BuildAndRunProject(const Element& root, CoverageRecorder& cov);
PointId ModelSiteCount();

}  // namespace paramfuzz::minixml

#endif  // PARAMFUZZ_SRC_TARGETS_MINIXML_INTERNAL_H_
