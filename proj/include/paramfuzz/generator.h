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

// Structured-input generators driven by a ParametricSource.
//
// Generators are written exactly like QuickCheck-style random generators;
// swapping the random source for a ParametricSource makes them parametric.
// They are stateless, so one instance may be shared by any number of runs.

#ifndef PARAMFUZZ_GENERATOR_H_
#define PARAMFUZZ_GENERATOR_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "paramfuzz/param.h"

namespace paramfuzz {

struct GeneratorConfig {
  int max_depth = 5;
  int max_children = 4;
  int max_str_len = 10;

  // Literal pools. For the XML generator: element names, attribute names and
  // attribute values. For the script generator only `values` (string
  // literal contents) is used.
  std::vector<std::string> names;
  std::vector<std::string> attributes;
  std::vector<std::string> values;

  // Throws GeneratorDefinitionError when a bound is < 1.
  void Validate() const;
  // Stable digest of every field; part of a generator's fingerprint.
  std::string Digest() const;
};

struct GeneratedInput {
  // The only channel to the target.
  std::string text;
};

class Generator {
 public:
  explicit Generator(GeneratorConfig config);
  virtual ~Generator() = default;

  virtual std::string_view name() const = 0;
  virtual GeneratedInput Generate(ParametricSource& source) const = 0;

  const GeneratorConfig& config() const { return config_; }
  // name + config digest. Replay refuses sequences recorded under a
  // different fingerprint.
  std::string Fingerprint() const;

 protected:
  GeneratorConfig config_;
};

// Identifier alphabet used for generated names: ASCII letters.
bool IsIdentifierChar(unsigned char c);
// Printable ASCII used for generated text.
bool IsPrintableChar(unsigned char c);

// A string of length nextIntInRange(1, max_str_len) whose characters are
// decoded with nextChar and mapped into the identifier alphabet. Octets that
// already name an alphabet member map to themselves, so 0x66 decodes to 'f'.
std::string GenString(ParametricSource& source, const GeneratorConfig& config);
// As GenString, over the printable alphabet.
std::string GenText(ParametricSource& source, const GeneratorConfig& config);

// Loads a literal pool, one literal per line. Blank lines are skipped.
std::vector<std::string> LoadLiteralPool(const std::string& path);

// Default configurations tuned for the built-in targets.
GeneratorConfig DefaultXmlConfig();
GeneratorConfig DefaultScriptConfig();

// "xml" or "script"; throws std::invalid_argument for anything else.
std::unique_ptr<Generator> MakeGenerator(std::string_view name);
std::unique_ptr<Generator> MakeGenerator(std::string_view name, GeneratorConfig config);

}  // namespace paramfuzz

#endif  // PARAMFUZZ_GENERATOR_H_
