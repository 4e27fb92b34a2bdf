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

#include "paramfuzz/script_generator.h"

namespace paramfuzz {
namespace {

constexpr std::array<std::string_view, 3> kUnaryOps = {"-", "!", "typeof "};
constexpr std::array<std::string_view, 10> kBinaryOps = {"+", "-", "*",   "/",  "%",
                                                         "<", "==", "===", "&&", "||"};

// Statement kinds. The first kSimpleStatements need no nesting and are the
// only ones chosen once the depth bound is reached.
enum StatementKind {
  kExpressionStatement,
  kVarStatement,
  kBreakStatement,
  kContinueStatement,
  kReturnStatement,
  kEmptyStatement,
  kIfStatement,
  kWhileStatement,
  kBlockStatement,
  kStatementKinds,
};
constexpr int kSimpleStatements = kIfStatement;

enum ExpressionKind {
  kLiteral,
  kIdentifier,
  kUnary,
  kBinary,
  kCall,
  kIndex,
  kFunction,
  kArrow,
  kAssign,
  kExpressionKinds,
};
constexpr int kSimpleExpressions = kUnary;

}  // namespace

GeneratedInput ScriptGenerator::Generate(ParametricSource& source) const {
  std::string out;
  const auto count = source.NextIntInRange(1, config_.max_children + 1);
  for (int64_t i = 0; i < count; ++i) {
    if (i > 0) out.push_back('\n');
    GenStatement(source, 1, out);
  }
  return {std::move(out)};
}

void ScriptGenerator::GenStatement(ParametricSource& source, int depth,
                                   std::string& out) const {
  const int kinds = depth < config_.max_depth ? kStatementKinds : kSimpleStatements;
  switch (source.NextIntInRange(0, kinds)) {
    case kExpressionStatement:
      GenExpression(source, depth, out);
      out.push_back(';');
      break;
    case kVarStatement:
      out += "var ";
      out += source.ChooseFrom(kIdentifiers);
      if (source.NextBool()) {
        out += " = ";
        GenExpression(source, depth, out);
      }
      out.push_back(';');
      break;
    case kBreakStatement:
      out += "break;";
      break;
    case kContinueStatement:
      out += "continue;";
      break;
    case kReturnStatement:
      out += "return";
      if (source.NextBool()) {
        out.push_back(' ');
        GenExpression(source, depth, out);
      }
      out.push_back(';');
      break;
    case kEmptyStatement:
      out.push_back(';');
      break;
    case kIfStatement:
      out += "if (";
      GenExpression(source, depth + 1, out);
      out += ") ";
      GenBlock(source, depth + 1, out);
      if (source.NextBool()) {
        out += " else ";
        GenBlock(source, depth + 1, out);
      }
      break;
    case kWhileStatement:
      out += "while (";
      GenExpression(source, depth + 1, out);
      out += ") ";
      GenBlock(source, depth + 1, out);
      break;
    case kBlockStatement:
      GenBlock(source, depth + 1, out);
      break;
  }
}

void ScriptGenerator::GenBlock(ParametricSource& source, int depth, std::string& out) const {
  out += "{ ";
  const auto count = source.NextIntInRange(0, config_.max_children);
  for (int64_t i = 0; i < count; ++i) {
    GenStatement(source, depth, out);
    out.push_back(' ');
  }
  out.push_back('}');
}

void ScriptGenerator::GenExpression(ParametricSource& source, int depth,
                                    std::string& out) const {
  const int kinds = depth < config_.max_depth ? kExpressionKinds : kSimpleExpressions;
  switch (source.NextIntInRange(0, kinds)) {
    case kLiteral:
      GenLiteral(source, out);
      break;
    case kIdentifier:
      out += source.ChooseFrom(kIdentifiers);
      break;
    case kUnary:
      out.push_back('(');
      out += source.ChooseFrom(kUnaryOps);
      GenExpression(source, depth + 1, out);
      out.push_back(')');
      break;
    case kBinary: {
      out.push_back('(');
      GenExpression(source, depth + 1, out);
      out.push_back(' ');
      out += source.ChooseFrom(kBinaryOps);
      out.push_back(' ');
      GenExpression(source, depth + 1, out);
      out.push_back(')');
      break;
    }
    case kCall: {
      out.push_back('(');
      GenExpression(source, depth + 1, out);
      out += ")(";
      const auto args = source.NextIntInRange(0, 3);
      for (int64_t i = 0; i < args; ++i) {
        if (i > 0) out += ", ";
        GenExpression(source, depth + 1, out);
      }
      out.push_back(')');
      break;
    }
    case kIndex:
      out.push_back('(');
      GenExpression(source, depth + 1, out);
      out += ")[";
      GenExpression(source, depth + 1, out);
      out.push_back(']');
      break;
    case kFunction:
      out += "(function";
      GenParams(source, out);
      out.push_back(' ');
      GenBlock(source, depth + 1, out);
      out.push_back(')');
      break;
    case kArrow:
      out.push_back('(');
      GenParams(source, out);
      out += " => ";
      GenExpression(source, depth + 1, out);
      out.push_back(')');
      break;
    case kAssign:
      out.push_back('(');
      out += source.ChooseFrom(kIdentifiers);
      out += " = ";
      GenExpression(source, depth + 1, out);
      out.push_back(')');
      break;
  }
}

void ScriptGenerator::GenLiteral(ParametricSource& source, std::string& out) const {
  switch (source.NextIntInRange(0, 6)) {
    case 0:
      out += std::to_string(source.NextIntInRange(0, 100));
      break;
    case 1:
      out.push_back('"');
      if (!config_.values.empty() && source.NextBool()) {
        for (char c : source.ChooseFrom(config_.values)) {
          if (c == '"' || c == '\\') out.push_back('\\');
          out.push_back(c);
        }
      } else {
        out += GenString(source, config_);
      }
      out.push_back('"');
      break;
    case 2:
      out += "true";
      break;
    case 3:
      out += "false";
      break;
    case 4:
      out += "null";
      break;
    case 5:
      out += "undefined";
      break;
  }
}

void ScriptGenerator::GenParams(ParametricSource& source, std::string& out) const {
  out.push_back('(');
  const auto count = source.NextIntInRange(0, 3);
  for (int64_t i = 0; i < count; ++i) {
    if (i > 0) out += ", ";
    out += source.ChooseFrom(kIdentifiers);
  }
  out.push_back(')');
}

}  // namespace paramfuzz
