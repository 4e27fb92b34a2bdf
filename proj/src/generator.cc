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

#include "paramfuzz/generator.h"

#include <fstream>
#include <stdexcept>

#include "paramfuzz/hash.h"
#include "paramfuzz/script_generator.h"
#include "paramfuzz/xml_generator.h"

namespace paramfuzz {
namespace {

constexpr std::string_view kLetters =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

char MapIntoLetters(unsigned char c) {
  if (IsIdentifierChar(c)) return static_cast<char>(c);
  return kLetters[c % kLetters.size()];
}

char MapIntoPrintable(unsigned char c) {
  if (IsPrintableChar(c)) return static_cast<char>(c);
  return static_cast<char>(0x20 + c % 95);
}

std::string GenMapped(ParametricSource& source, const GeneratorConfig& config,
                      char (*map)(unsigned char)) {
  const auto len = source.NextIntInRange(1, config.max_str_len);
  std::string out;
  out.reserve(static_cast<size_t>(len));
  for (int64_t i = 0; i < len; ++i) out.push_back(map(source.NextChar()));
  return out;
}

}  // namespace

void GeneratorConfig::Validate() const {
  if (max_depth < 1 || max_children < 1 || max_str_len < 1) {
    throw GeneratorDefinitionError("generator bounds must be >= 1");
  }
}

std::string GeneratorConfig::Digest() const {
  std::string buf = std::to_string(max_depth) + "/" + std::to_string(max_children) +
                    "/" + std::to_string(max_str_len);
  for (const auto* pool : {&names, &attributes, &values}) {
    buf += '|';
    for (const auto& literal : *pool) {
      buf += literal;
      buf += '\n';
    }
  }
  return Hex64(Fnv1a(buf));
}

Generator::Generator(GeneratorConfig config) : config_(std::move(config)) {
  config_.Validate();
}

std::string Generator::Fingerprint() const {
  return std::string(name()) + ":" + config_.Digest();
}

bool IsIdentifierChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsPrintableChar(unsigned char c) { return c >= 0x20 && c <= 0x7e; }

std::string GenString(ParametricSource& source, const GeneratorConfig& config) {
  return GenMapped(source, config, MapIntoLetters);
}

std::string GenText(ParametricSource& source, const GeneratorConfig& config) {
  return GenMapped(source, config, MapIntoPrintable);
}

std::vector<std::string> LoadLiteralPool(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open literal pool " + path);
  std::vector<std::string> pool;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) pool.push_back(line);
  }
  return pool;
}

GeneratorConfig DefaultXmlConfig() {
  GeneratorConfig config;
  config.names = {"project", "description", "property", "target",  "path",  "pathelement",
                  "augment", "echo",        "antcall",  "param",   "mkdir"};
  config.attributes = {"id",    "name",  "default", "depends", "value",   "location",
                       "refid", "if",    "unless",  "target",  "message", "dir"};
  config.values = {"a", "b", "c", "build", "test", "a,b", "b,c", "${a}", "${b}", "x${c}", "lib"};
  return config;
}

GeneratorConfig DefaultScriptConfig() {
  GeneratorConfig config;
  config.values = {"a", "b", "length", "0"};
  return config;
}

std::unique_ptr<Generator> MakeGenerator(std::string_view name) {
  if (name == "xml") return MakeGenerator(name, DefaultXmlConfig());
  if (name == "script") return MakeGenerator(name, DefaultScriptConfig());
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

std::unique_ptr<Generator> MakeGenerator(std::string_view name, GeneratorConfig config) {
  if (name == "xml") return std::make_unique<XmlGenerator>(std::move(config));
  if (name == "script") return std::make_unique<ScriptGenerator>(std::move(config));
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

}  // namespace paramfuzz
