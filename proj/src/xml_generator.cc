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

#include "paramfuzz/xml_generator.h"

#include <algorithm>

namespace paramfuzz {
namespace {

void AppendEscaped(std::string_view text, bool attribute, std::string& out) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default:
        out.push_back(c);
    }
  }
}

void Serialize(const XmlElement& element, std::string& out) {
  out.push_back('<');
  out += element.name;
  for (const auto& [key, value] : element.attributes) {
    out.push_back(' ');
    out += key;
    out += "=\"";
    AppendEscaped(value, /*attribute=*/true, out);
    out.push_back('"');
  }
  if (element.children.empty() && !element.has_text) {
    out += " />";
    return;
  }
  out.push_back('>');
  for (const auto& child : element.children) Serialize(child, out);
  if (element.has_text) AppendEscaped(element.text, /*attribute=*/false, out);
  out += "</";
  out += element.name;
  out.push_back('>');
}

}  // namespace

std::string SerializeXml(const XmlElement& element) {
  std::string out;
  Serialize(element, out);
  return out;
}

GeneratedInput XmlGenerator::Generate(ParametricSource& source) const {
  return {SerializeXml(GenerateDocument(source))};
}

XmlElement XmlGenerator::GenerateDocument(ParametricSource& source) const {
  return GenElement(source, 1);
}

XmlElement XmlGenerator::GenElement(ParametricSource& source, int depth) const {
  XmlElement node;
  node.name = GenName(source);
  if (!config_.attributes.empty()) {
    const auto count = source.NextIntInRange(0, 3);
    for (int64_t i = 0; i < count; ++i) {
      const std::string& key = source.ChooseFrom(config_.attributes);
      std::string value = GenValue(source);
      // Duplicate attributes would make the document ill-formed.
      const bool seen = std::any_of(node.attributes.begin(), node.attributes.end(),
                                    [&](const auto& kv) { return kv.first == key; });
      if (!seen) node.attributes.emplace_back(key, std::move(value));
    }
  }
  if (depth < config_.max_depth) {
    const auto n = source.NextIntInRange(0, config_.max_children);
    for (int64_t i = 0; i < n; ++i) node.children.push_back(GenElement(source, depth + 1));
  }
  if (source.NextBool()) {
    node.has_text = true;
    node.text = GenText(source, config_);
  }
  return node;
}

std::string XmlGenerator::GenName(ParametricSource& source) const {
  if (!config_.names.empty() && source.NextBool()) return source.ChooseFrom(config_.names);
  return GenString(source, config_);
}

std::string XmlGenerator::GenValue(ParametricSource& source) const {
  if (!config_.values.empty() && source.NextBool()) return source.ChooseFrom(config_.values);
  return GenText(source, config_);
}

}  // namespace paramfuzz
