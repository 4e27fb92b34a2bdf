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

#ifndef PARAMFUZZ_SCRIPT_GENERATOR_H_
#define PARAMFUZZ_SCRIPT_GENERATOR_H_

#include <array>
#include <string>
#include <string_view>

#include "paramfuzz/generator.h"

namespace paramfuzz {

// Generates programs in a small JavaScript subset: literals, identifiers
// l_0..l_3, unary/binary operators, calls, indexing, function literals,
// arrow functions, assignment, var, if/else, while, break, continue, return.
//
// Compound expressions are always parenthesized so the output parses the
// same way regardless of operator precedence. The generator is context
// free: `break` outside a loop is syntactically fine and left for the
// semantic stage to reject.
class ScriptGenerator final : public Generator {
 public:
  static constexpr std::array<std::string_view, 4> kIdentifiers = {"l_0", "l_1", "l_2",
                                                                   "l_3"};

  explicit ScriptGenerator(GeneratorConfig config) : Generator(std::move(config)) {}

  std::string_view name() const override { return "script"; }
  GeneratedInput Generate(ParametricSource& source) const override;

 private:
  void GenStatement(ParametricSource& source, int depth, std::string& out) const;
  void GenBlock(ParametricSource& source, int depth, std::string& out) const;
  void GenExpression(ParametricSource& source, int depth, std::string& out) const;
  void GenLiteral(ParametricSource& source, std::string& out) const;
  void GenParams(ParametricSource& source, std::string& out) const;
};

}  // namespace paramfuzz

#endif  // PARAMFUZZ_SCRIPT_GENERATOR_H_
