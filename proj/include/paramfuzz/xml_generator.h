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

#ifndef PARAMFUZZ_XML_GENERATOR_H_
#define PARAMFUZZ_XML_GENERATOR_H_

#include <string>
#include <utility>
#include <vector>

#include "paramfuzz/generator.h"

namespace paramfuzz {

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  bool has_text = false;
  std::string text;
};

// Serializes with children before text, `<name />` for empty elements and
// `&`, `<`, `>` (plus `"` in attribute values) escaped as entities.
std::string SerializeXml(const XmlElement& element);

// Builds a document tree top-down, then serializes it. Per element, in
// order: name, attributes (only when an attribute pool is configured),
// child count in [0, max_children) while depth < max_depth, the children,
// then a bool deciding whether to embed text.
//
// Names come from the name pool or from GenString, chosen by a bool that is
// only decoded when the pool is non-empty. With all pools empty the decoding
// order is exactly the classic recursive element generator.
class XmlGenerator final : public Generator {
 public:
  explicit XmlGenerator(GeneratorConfig config) : Generator(std::move(config)) {}

  std::string_view name() const override { return "xml"; }
  GeneratedInput Generate(ParametricSource& source) const override;

  XmlElement GenerateDocument(ParametricSource& source) const;

 private:
  XmlElement GenElement(ParametricSource& source, int depth) const;
  std::string GenName(ParametricSource& source) const;
  std::string GenValue(ParametricSource& source) const;
};

}  // namespace paramfuzz

#endif  // PARAMFUZZ_XML_GENERATOR_H_
