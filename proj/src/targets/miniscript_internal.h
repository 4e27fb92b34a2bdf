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

#ifndef PARAMFUZZ_SRC_TARGETS_MINISCRIPT_INTERNAL_H_
#define PARAMFUZZ_SRC_TARGETS_MINISCRIPT_INTERNAL_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "paramfuzz/coverage.h"

namespace paramfuzz::miniscript {

enum class Kind {
  // expressions
  kNumber,
  kString,
  kTrue,
  kFalse,
  kNull,
  kUndefined,
  kIdentifier,
  kUnary,
  kBinary,
  kCall,
  kIndex,
  kMember,
  kFunction,
  kArrow,
  kAssign,
  // statements
  kExpressionStatement,
  kVar,
  kBreak,
  kContinue,
  kReturn,
  kEmpty,
  kIf,
  kWhile,
  kBlock,
  kProgram,
};

struct Node {
  Kind kind;
  // Identifier / variable name, operator, string value or member name.
  std::string text;
  double number = 0;
  std::vector<std::string> params;
  // Expression operands, or statement bodies: kIf = {cond, then, else?},
  // kWhile = {cond, body}, kVar = {init?}, kReturn = {value?},
  // kFunction = {block}, kArrow = {body}, kCall = {callee, args...}.
  std::vector<std::unique_ptr<Node>> kids;

  explicit Node(Kind k) : kind(k) {}
};

using NodePtr = std::unique_ptr<Node>;

// Stage 1. Throws SyntaxRejection.
NodePtr ParseProgram(std::string_view input, CoverageRecorder& cov);
PointId ParserSiteCount();

struct CompileOptions {
  bool warnings_as_invalid = false;
};

// Stage 2: scope checks, arrow normalization, undeclared-variable check,
// constant folding, dead-code elimination and emission. Throws
// SemanticRejection. Returns the emitted code.
std::string Compile(Node& program, const CompileOptions& options, CoverageRecorder& cov);
PointId CompilerSiteCount();

}  // namespace paramfuzz::miniscript

#endif  // PARAMFUZZ_SRC_TARGETS_MINISCRIPT_INTERNAL_H_
