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

// Semantic stage of the mini script target: an optimizing compiler in the
// spirit of a JavaScript minifier. Passes, in order:
//
//   1. scope resolution and early errors (break/continue outside a loop,
//      return outside a function, duplicate parameters)
//   2. arrow normalization (single-identifier arrow bodies are classified
//      as identity or capturing)
//   3. undeclared-variable check
//   4. constant folding
//   5. dead-code elimination
//   6. emission of a stack-machine listing
//
// Known defects, kept on purpose as planted bugs:
//   * arrow normalization looks up the body's binding without checking that
//     it exists, so `(p) => y` with undeclared `y` dereferences null before
//     the undeclared-variable check can report it;
//   * folding a call whose callee is a property of `undefined` evaluates the
//     receiver eagerly and throws;
//   * dead-code elimination refuses to drop a hoisted `var` that follows a
//     `break`, raising an internal error instead.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "paramfuzz/target.h"
#include "targets/faults.h"
#include "targets/instrument.h"
#include "targets/miniscript_internal.h"

namespace paramfuzz::miniscript {
namespace {

constexpr PointId kRegionBase = kSemanticBase;

[[noreturn]] void Reject(const std::string& why) { throw SemanticRejection("JSC_ERROR: " + why); }

// ---- scopes ----

struct Scope {
  Scope* parent = nullptr;
  bool is_function = false;
  std::map<std::string, int> bindings;  // name -> 0 param, 1 var
  int loop_depth = 0;
  int function_depth = 0;

  const int* Find(const std::string& name) const {
    for (const Scope* s = this; s != nullptr; s = s->parent) {
      auto it = s->bindings.find(name);
      if (it != s->bindings.end()) return &it->second;
    }
    return nullptr;
  }
};

struct ArrowSite {
  Node* arrow;
  const Scope* scope;
};

class Resolver {
 public:
  Resolver(CoverageRecorder& cov, std::deque<Scope>& scopes) : cov_(cov), scopes_(scopes) {}

  void Program(Node& program) {
    Scope& global = scopes_.emplace_back();
    Hoist(program, global);
    for (auto& stmt : program.kids) Statement(*stmt, global);
  }

  std::vector<std::string> undeclared;
  std::vector<ArrowSite> arrows;
  int max_function_depth = 0;

 private:
  // Collects `var` names of a function body, not descending into nested
  // functions.
  void Hoist(const Node& node, Scope& scope) {
    for (const auto& kid : node.kids) {
      if (!kid) continue;
      if (kid->kind == Kind::kFunction || kid->kind == Kind::kArrow) continue;
      if (kid->kind == Kind::kVar) scope.bindings.emplace(kid->text, 1);
      Hoist(*kid, scope);
    }
  }

  Scope& EnterFunction(Node& fn, Scope& outer) {
    Scope& scope = scopes_.emplace_back();
    scope.parent = &outer;
    scope.is_function = true;
    scope.function_depth = outer.function_depth + 1;
    if (PF_BRANCH(scope.function_depth > max_function_depth)) max_function_depth = scope.function_depth;
    std::set<std::string> seen;
    for (const std::string& p : fn.params) {
      if (PF_BRANCH(!seen.insert(p).second)) Reject("duplicate parameter name \"" + p + "\"");
      scope.bindings.emplace(p, 0);
    }
    Hoist(fn, scope);
    return scope;
  }

  void Statement(Node& node, Scope& scope) {
    switch (node.kind) {
      case Kind::kExpressionStatement:
        Expression(*node.kids[0], scope);
        break;
      case Kind::kVar:
        if (PF_BRANCH(!node.kids.empty())) Expression(*node.kids[0], scope);
        break;
      case Kind::kBreak:
        if (PF_BRANCH(scope.loop_depth == 0)) Reject("unlabelled break must be inside loop");
        break;
      case Kind::kContinue:
        if (PF_BRANCH(scope.loop_depth == 0)) Reject("continue must be inside loop");
        break;
      case Kind::kReturn:
        if (PF_BRANCH(!scope.is_function)) Reject("return statement outside of function");
        if (!node.kids.empty()) Expression(*node.kids[0], scope);
        break;
      case Kind::kEmpty:
        break;
      case Kind::kIf:
        Expression(*node.kids[0], scope);
        Statement(*node.kids[1], scope);
        if (PF_BRANCH(node.kids.size() > 2)) Statement(*node.kids[2], scope);
        break;
      case Kind::kWhile:
        Expression(*node.kids[0], scope);
        ++scope.loop_depth;
        if (PF_BRANCH(scope.loop_depth > 1)) PF_HIT();
        Statement(*node.kids[1], scope);
        --scope.loop_depth;
        break;
      case Kind::kBlock:
        for (auto& stmt : node.kids) Statement(*stmt, scope);
        break;
      default:
        break;
    }
  }

  void Expression(Node& node, Scope& scope) {
    switch (node.kind) {
      case Kind::kIdentifier:
        Reference(node.text, scope);
        break;
      case Kind::kAssign:
        Reference(node.text, scope);
        Expression(*node.kids[0], scope);
        break;
      case Kind::kFunction: {
        Scope& inner = EnterFunction(node, scope);
        for (auto& stmt : node.kids[0]->kids) Statement(*stmt, inner);
        break;
      }
      case Kind::kArrow: {
        Scope& inner = EnterFunction(node, scope);
        Node& body = *node.kids[0];
        if (PF_BRANCH(body.kind == Kind::kBlock)) {
          for (auto& stmt : body.kids) Statement(*stmt, inner);
        } else {
          if (PF_BRANCH(!node.params.empty() && body.kind == Kind::kIdentifier)) {
            arrows.push_back({&node, &inner});
          }
          Expression(body, inner);
        }
        break;
      }
      default:
        for (auto& kid : node.kids) Expression(*kid, scope);
    }
  }

  void Reference(const std::string& name, const Scope& scope) {
    int hops = 0;
    for (const Scope* s = &scope; s != nullptr; s = s->parent, ++hops) {
      if (s->bindings.contains(name)) {
        if (PF_BRANCH(hops > 0 && s->is_function)) PF_HIT();  // captured from an enclosing function
        if (PF_BRANCH(hops > 1)) PF_HIT();
        return;
      }
    }
    undeclared.push_back(name);
  }

  CoverageRecorder& cov_;
  std::deque<Scope>& scopes_;
};

// ---- constant values ----

struct Undefined {
  bool operator==(const Undefined&) const = default;
};
struct Null {
  bool operator==(const Null&) const = default;
};
using Value = std::variant<Undefined, Null, bool, double, std::string>;

bool Truthy(const Value& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  if (std::holds_alternative<double>(v)) {
    const double d = std::get<double>(v);
    return d != 0 && !std::isnan(d);
  }
  if (std::holds_alternative<std::string>(v)) return !std::get<std::string>(v).empty();
  return false;
}

double ToNumber(const Value& v) {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? 1 : 0;
  if (std::holds_alternative<Null>(v)) return 0;
  if (std::holds_alternative<std::string>(v)) {
    const std::string& s = std::get<std::string>(v);
    if (s.empty()) return 0;
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    return *end == '\0' ? d : std::nan("");
  }
  return std::nan("");
}

std::string ToString(const Value& v) {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  if (std::holds_alternative<Null>(v)) return "null";
  if (std::holds_alternative<Undefined>(v)) return "undefined";
  const double d = std::get<double>(v);
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
  if (d == std::floor(d) && std::fabs(d) < 1e15) return std::to_string(static_cast<long long>(d));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

std::string TypeOf(const Value& v) {
  if (std::holds_alternative<Undefined>(v)) return "undefined";
  if (std::holds_alternative<Null>(v)) return "object";
  if (std::holds_alternative<bool>(v)) return "boolean";
  if (std::holds_alternative<double>(v)) return "number";
  return "string";
}

NodePtr MakeLiteral(const Value& v) {
  NodePtr node;
  if (std::holds_alternative<Undefined>(v)) {
    node = std::make_unique<Node>(Kind::kUndefined);
  } else if (std::holds_alternative<Null>(v)) {
    node = std::make_unique<Node>(Kind::kNull);
  } else if (std::holds_alternative<bool>(v)) {
    node = std::make_unique<Node>(std::get<bool>(v) ? Kind::kTrue : Kind::kFalse);
  } else if (std::holds_alternative<double>(v)) {
    node = std::make_unique<Node>(Kind::kNumber);
    node->number = std::get<double>(v);
    node->text = ToString(v);
  } else {
    node = std::make_unique<Node>(Kind::kString);
    node->text = std::get<std::string>(v);
  }
  return node;
}

class Folder {
 public:
  Folder(CoverageRecorder& cov, std::vector<std::string>& warnings)
      : cov_(cov), warnings_(warnings) {}

  void Statements(std::vector<NodePtr>& list) {
    for (auto& stmt : list) Statement(stmt);
  }

  int folded = 0;

 private:
  void Statement(NodePtr& slot) {
    Node& node = *slot;
    switch (node.kind) {
      case Kind::kExpressionStatement:
      case Kind::kVar:
      case Kind::kReturn:
        if (!node.kids.empty()) Expr(node.kids[0]);
        break;
      case Kind::kIf: {
        const auto cond = Expr(node.kids[0]);
        Statement(node.kids[1]);
        if (node.kids.size() > 2) Statement(node.kids[2]);
        if (PF_BRANCH(cond.has_value())) {
          ++folded;
          if (PF_BRANCH(Truthy(*cond))) {
            slot = std::move(node.kids[1]);
          } else if (PF_BRANCH(node.kids.size() > 2)) {
            slot = std::move(node.kids[2]);
          } else {
            slot = std::make_unique<Node>(Kind::kEmpty);
          }
        }
        break;
      }
      case Kind::kWhile: {
        const auto cond = Expr(node.kids[0]);
        Statement(node.kids[1]);
        if (PF_BRANCH(cond.has_value() && !Truthy(*cond))) {
          ++folded;
          slot = std::make_unique<Node>(Kind::kEmpty);
        } else if (PF_BRANCH(cond.has_value())) {
          warnings_.push_back("loop condition is always true");
        }
        break;
      }
      case Kind::kBlock:
        Statements(node.kids);
        break;
      default:
        break;
    }
  }

  std::optional<Value> Replace(NodePtr& slot, Value v) {
    ++folded;
    slot = MakeLiteral(v);
    return v;
  }

  std::optional<Value> Expr(NodePtr& slot) {
    Node& node = *slot;
    switch (node.kind) {
      case Kind::kNumber:
        return node.number;
      case Kind::kString:
        return node.text;
      case Kind::kTrue:
        return true;
      case Kind::kFalse:
        return false;
      case Kind::kNull:
        return Null{};
      case Kind::kUndefined:
        return Undefined{};
      case Kind::kIdentifier:
        return std::nullopt;
      case Kind::kAssign:
        Expr(node.kids[0]);
        return std::nullopt;
      case Kind::kUnary:
        return Unary(slot);
      case Kind::kBinary:
        return Binary(slot);
      case Kind::kCall:
        return Call(slot);
      case Kind::kIndex:
      case Kind::kMember:
        return Property(slot);
      case Kind::kFunction:
        Statements(node.kids[0]->kids);
        return std::nullopt;
      case Kind::kArrow:
        if (PF_BRANCH(node.kids[0]->kind == Kind::kBlock)) {
          Statements(node.kids[0]->kids);
        } else {
          Expr(node.kids[0]);
        }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  std::optional<Value> Unary(NodePtr& slot) {
    Node& node = *slot;
    const auto operand = Expr(node.kids[0]);
    if (PF_BRANCH(!operand)) return std::nullopt;
    if (PF_BRANCH(node.text == "-")) return Replace(slot, -ToNumber(*operand));
    if (PF_BRANCH(node.text == "!")) return Replace(slot, !Truthy(*operand));
    return Replace(slot, TypeOf(*operand));
  }

  std::optional<Value> Binary(NodePtr& slot) {
    Node& node = *slot;
    const std::string op = node.text;
    const auto lhs = Expr(node.kids[0]);
    const auto rhs = Expr(node.kids[1]);
    if (PF_BRANCH(op == "&&" || op == "||")) {
      if (PF_BRANCH(!lhs)) return std::nullopt;
      ++folded;
      const bool take_lhs = (op == "&&") != Truthy(*lhs);
      NodePtr keep = std::move(node.kids[take_lhs ? 0 : 1]);
      slot = std::move(keep);
      return take_lhs ? lhs : rhs;
    }
    if (PF_BRANCH(!lhs || !rhs)) return std::nullopt;
    if (PF_BRANCH(op == "+")) {
      if (PF_BRANCH(std::holds_alternative<std::string>(*lhs) ||
                    std::holds_alternative<std::string>(*rhs))) {
        return Replace(slot, ToString(*lhs) + ToString(*rhs));
      }
      return Replace(slot, ToNumber(*lhs) + ToNumber(*rhs));
    }
    if (PF_BRANCH(op == "-")) return Replace(slot, ToNumber(*lhs) - ToNumber(*rhs));
    if (PF_BRANCH(op == "*")) return Replace(slot, ToNumber(*lhs) * ToNumber(*rhs));
    if (PF_BRANCH(op == "/" || op == "%")) {
      const double d = ToNumber(*rhs);
      if (PF_BRANCH(d == 0)) warnings_.push_back("division by zero");
      if (op == "/") return Replace(slot, ToNumber(*lhs) / d);
      return Replace(slot, std::fmod(ToNumber(*lhs), d));
    }
    if (PF_BRANCH(op == "<" || op == ">" || op == "<=" || op == ">=")) {
      bool r;
      if (PF_BRANCH(std::holds_alternative<std::string>(*lhs) &&
                    std::holds_alternative<std::string>(*rhs))) {
        const auto& a = std::get<std::string>(*lhs);
        const auto& b = std::get<std::string>(*rhs);
        r = op == "<" ? a < b : op == ">" ? a > b : op == "<=" ? a <= b : a >= b;
      } else {
        const double a = ToNumber(*lhs);
        const double b = ToNumber(*rhs);
        if (PF_BRANCH(std::isnan(a) || std::isnan(b))) return Replace(slot, false);
        r = op == "<" ? a < b : op == ">" ? a > b : op == "<=" ? a <= b : a >= b;
      }
      return Replace(slot, r);
    }
    const bool strict = op == "===" || op == "!==";
    const bool negate = op == "!=" || op == "!==";
    bool eq;
    if (PF_BRANCH(lhs->index() == rhs->index())) {
      eq = *lhs == *rhs;
      if (PF_BRANCH(std::holds_alternative<double>(*lhs) && std::isnan(std::get<double>(*lhs)))) {
        eq = false;
      }
    } else if (PF_BRANCH(strict)) {
      eq = false;
    } else {
      const bool lhs_nullish = lhs->index() <= 1;
      const bool rhs_nullish = rhs->index() <= 1;
      if (PF_BRANCH(lhs_nullish || rhs_nullish)) {
        eq = lhs_nullish && rhs_nullish;
      } else {
        eq = ToNumber(*lhs) == ToNumber(*rhs);
      }
    }
    return Replace(slot, eq != negate);
  }

  std::optional<Value> Call(NodePtr& slot) {
    Node& node = *slot;
    Node& callee = *node.kids[0];
    if (PF_BRANCH(callee.kind == Kind::kIndex || callee.kind == Kind::kMember)) {
      // The receiver is evaluated here so that method calls on constants can
      // be folded.
      const auto receiver = Expr(callee.kids[0]);
      if (receiver && std::holds_alternative<Undefined>(*receiver)) {
        internal::Fault("IllegalStateException", "Unexpected undefined receiver in call",
                        "PeepholeFold::TryFoldCall");
      }
      if (PF_BRANCH(callee.kind == Kind::kIndex)) Expr(callee.kids[1]);
    } else {
      const auto fn = Expr(node.kids[0]);
      if (PF_BRANCH(fn.has_value())) warnings_.push_back("calling a non-function constant");
      if (PF_BRANCH(node.kids[0]->kind == Kind::kFunction || node.kids[0]->kind == Kind::kArrow)) {
        PF_HIT();  // immediately invoked
      }
    }
    for (size_t i = 1; i < node.kids.size(); ++i) Expr(node.kids[i]);
    if (PF_BRANCH(node.kids.size() > 2)) PF_HIT();
    return std::nullopt;
  }

  std::optional<Value> Property(NodePtr& slot) {
    Node& node = *slot;
    const auto object = Expr(node.kids[0]);
    std::optional<Value> key;
    if (node.kind == Kind::kIndex) {
      key = Expr(node.kids[1]);
    } else {
      key = node.text;
    }
    if (PF_BRANCH(!object)) return std::nullopt;
    if (PF_BRANCH(object->index() <= 1)) {
      warnings_.push_back("property access on " + ToString(*object));
      return std::nullopt;
    }
    if (PF_BRANCH(!key || !std::holds_alternative<std::string>(*object))) return std::nullopt;
    const std::string& str = std::get<std::string>(*object);
    if (PF_BRANCH(ToString(*key) == "length")) return Replace(slot, static_cast<double>(str.size()));
    const double index = ToNumber(*key);
    if (PF_BRANCH(index >= 0 && index < static_cast<double>(str.size()) && index == std::floor(index))) {
      return Replace(slot, std::string(1, str[static_cast<size_t>(index)]));
    }
    return std::nullopt;
  }

  CoverageRecorder& cov_;
  std::vector<std::string>& warnings_;
};

class DeadCodeEliminator {
 public:
  DeadCodeEliminator(CoverageRecorder& cov, std::vector<std::string>& warnings)
      : cov_(cov), warnings_(warnings) {}

  // Returns true if control cannot fall off the end of `list`.
  bool List(std::vector<NodePtr>& list, int loop_depth) {
    Kind terminator = Kind::kEmpty;
    size_t i = 0;
    for (; i < list.size(); ++i) {
      if (Statement(*list[i], loop_depth, terminator)) {
        ++i;
        break;
      }
    }
    if (PF_BRANCH(i < list.size())) {
      for (size_t j = i; j < list.size(); ++j) {
        if (PF_BRANCH(list[j]->kind == Kind::kVar)) {
          if (terminator == Kind::kBreak && loop_depth > 0) {
            internal::Fault("IllegalStateException", "Unexpected variable declaration in dead code",
                            "DeadCodeEliminator::RemoveUnreachable");
          }
          // Keep the hoisted declaration, drop the initializer.
          list[j]->kids.clear();
          continue;
        }
        if (PF_BRANCH(list[j]->kind != Kind::kEmpty)) ++removed;
        list[j] = std::make_unique<Node>(Kind::kEmpty);
      }
      warnings_.push_back("unreachable code");
    }
    return terminator != Kind::kEmpty;
  }

  int removed = 0;

 private:
  bool Statement(Node& node, int loop_depth, Kind& terminator) {
    switch (node.kind) {
      case Kind::kBreak:
      case Kind::kContinue:
      case Kind::kReturn:
        terminator = node.kind;
        if (PF_BRANCH(node.kind == Kind::kContinue)) PF_HIT();
        Expression(node);
        return true;
      case Kind::kBlock:
        return List(node.kids, loop_depth) && (terminator = Kind::kBlock, true);
      case Kind::kIf: {
        Expression(*node.kids[0]);
        Kind ignored = Kind::kEmpty;
        const bool then_exits = Statement(*node.kids[1], loop_depth, ignored);
        bool else_exits = false;
        if (PF_BRANCH(node.kids.size() > 2)) else_exits = Statement(*node.kids[2], loop_depth, ignored);
        if (PF_BRANCH(then_exits && else_exits)) {
          terminator = Kind::kIf;
          return true;
        }
        return false;
      }
      case Kind::kWhile: {
        Expression(*node.kids[0]);
        Kind ignored = Kind::kEmpty;
        if (PF_BRANCH(loop_depth >= 1)) PF_HIT();
        Statement(*node.kids[1], loop_depth + 1, ignored);
        return false;
      }
      default:
        Expression(node);
        return false;
    }
  }

  // Function bodies start a fresh loop context.
  void Expression(Node& node) {
    for (auto& kid : node.kids) {
      if (!kid) continue;
      if (kid->kind == Kind::kFunction) {
        if (PF_BRANCH(List(kid->kids[0]->kids, 0))) PF_HIT();
      } else if (kid->kind == Kind::kArrow && kid->kids[0]->kind == Kind::kBlock) {
        List(kid->kids[0]->kids, 0);
      } else if (kid->kind != Kind::kBlock && kid->kind != Kind::kIf && kid->kind != Kind::kWhile) {
        Expression(*kid);
      }
    }
  }

  CoverageRecorder& cov_;
  std::vector<std::string>& warnings_;
};

class Emitter {
 public:
  explicit Emitter(CoverageRecorder& cov) : cov_(cov) {}

  std::string Program(const Node& program) {
    for (const auto& stmt : program.kids) Statement(*stmt);
    // Output-strategy thresholds, one branch per size class.
    PF_BRANCH(instructions_ >= 8);
    PF_BRANCH(instructions_ >= 16);
    PF_BRANCH(instructions_ >= 24);
    PF_BRANCH(instructions_ >= 32);
    PF_BRANCH(instructions_ >= 48);
    PF_BRANCH(instructions_ >= 64);
    PF_BRANCH(instructions_ >= 80);
    PF_BRANCH(instructions_ >= 96);
    PF_BRANCH(instructions_ >= 128);
    PF_BRANCH(instructions_ >= 160);
    PF_BRANCH(instructions_ >= 192);
    PF_BRANCH(instructions_ >= 224);
    PF_BRANCH(instructions_ >= 256);
    PF_BRANCH(instructions_ >= 320);
    PF_BRANCH(instructions_ >= 384);
    PF_BRANCH(instructions_ >= 448);
    PF_BRANCH(instructions_ >= 512);
    PF_BRANCH(labels_ >= 2);
    PF_BRANCH(labels_ >= 4);
    PF_BRANCH(labels_ >= 6);
    PF_BRANCH(labels_ >= 8);
    PF_BRANCH(labels_ >= 10);
    PF_BRANCH(labels_ >= 12);
    PF_BRANCH(labels_ >= 16);
    PF_BRANCH(labels_ >= 20);
    PF_BRANCH(labels_ >= 24);
    PF_BRANCH(labels_ >= 32);
    PF_BRANCH(labels_ >= 40);
    PF_BRANCH(max_loop_depth_ >= 1);
    PF_BRANCH(max_loop_depth_ >= 2);
    PF_BRANCH(max_loop_depth_ >= 3);
    PF_BRANCH(max_loop_depth_ >= 4);
    PF_BRANCH(max_loop_depth_ >= 5);
    PF_BRANCH(max_loop_depth_ >= 6);
    PF_BRANCH(closures_ >= 1);
    PF_BRANCH(closures_ >= 2);
    PF_BRANCH(closures_ >= 3);
    PF_BRANCH(closures_ >= 4);
    PF_BRANCH(closures_ >= 6);
    PF_BRANCH(closures_ >= 8);
    PF_BRANCH(closures_ >= 10);
    PF_BRANCH(closures_ >= 12);
    PF_BRANCH(closures_ >= 16);
    PF_BRANCH(calls_ >= 1);
    PF_BRANCH(calls_ >= 2);
    PF_BRANCH(calls_ >= 3);
    PF_BRANCH(calls_ >= 4);
    PF_BRANCH(calls_ >= 6);
    PF_BRANCH(calls_ >= 8);
    PF_BRANCH(calls_ >= 10);
    PF_BRANCH(calls_ >= 12);
    PF_BRANCH(calls_ >= 16);
    PF_BRANCH(branches_ >= 1);
    PF_BRANCH(branches_ >= 2);
    PF_BRANCH(branches_ >= 3);
    PF_BRANCH(branches_ >= 4);
    PF_BRANCH(branches_ >= 6);
    PF_BRANCH(branches_ >= 8);
    PF_BRANCH(branches_ >= 10);
    PF_BRANCH(branches_ >= 12);
    PF_BRANCH(branches_ >= 16);
    PF_BRANCH(max_expression_depth_ >= 2);
    PF_BRANCH(max_expression_depth_ >= 3);
    PF_BRANCH(max_expression_depth_ >= 4);
    PF_BRANCH(max_expression_depth_ >= 5);
    PF_BRANCH(max_expression_depth_ >= 6);
    PF_BRANCH(max_expression_depth_ >= 7);
    PF_BRANCH(max_expression_depth_ >= 8);
    PF_BRANCH(max_expression_depth_ >= 10);
    PF_BRANCH(static_cast<int>(stores_.size()) >= 1);
    PF_BRANCH(static_cast<int>(stores_.size()) >= 2);
    PF_BRANCH(static_cast<int>(stores_.size()) >= 3);
    PF_BRANCH(static_cast<int>(stores_.size()) >= 4);
    return std::move(out_);
  }

 private:
  void Op(std::string_view op, std::string_view arg = {}) {
    ++instructions_;
    out_ += op;
    if (!arg.empty()) {
      out_ += ' ';
      out_ += arg;
    }
    out_ += '\n';
  }

  std::string Label() { return "L" + std::to_string(labels_++); }

  void Statement(const Node& node) {
    switch (node.kind) {
      case Kind::kExpressionStatement:
        Expression(*node.kids[0]);
        Op("pop");
        break;
      case Kind::kVar:
        if (PF_BRANCH(!node.kids.empty())) {
          Expression(*node.kids[0]);
          Op("store", node.text);
          stores_.insert(node.text);
        } else {
          Op("declare", node.text);
        }
        break;
      case Kind::kBreak:
        Op("jump", loops_.empty() ? "?" : loops_.back().second);
        break;
      case Kind::kContinue:
        Op("jump", loops_.empty() ? "?" : loops_.back().first);
        break;
      case Kind::kReturn:
        if (PF_BRANCH(node.kids.empty())) {
          Op("push", "undefined");
        } else {
          Expression(*node.kids[0]);
        }
        Op("ret");
        break;
      case Kind::kIf: {
        const std::string other = Label();
        ++branches_;
        Expression(*node.kids[0]);
        Op("jump_if_false", other);
        Statement(*node.kids[1]);
        if (PF_BRANCH(node.kids.size() > 2)) {
          const std::string end = Label();
          Op("jump", end);
          Op("label", other);
          Statement(*node.kids[2]);
          Op("label", end);
        } else {
          Op("label", other);
        }
        break;
      }
      case Kind::kWhile: {
        const std::string top = Label();
        const std::string end = Label();
        loops_.emplace_back(top, end);
        max_loop_depth_ = std::max(max_loop_depth_, static_cast<int>(loops_.size()));
        Op("label", top);
        Expression(*node.kids[0]);
        Op("jump_if_false", end);
        Statement(*node.kids[1]);
        Op("jump", top);
        Op("label", end);
        loops_.pop_back();
        break;
      }
      case Kind::kBlock:
        for (const auto& stmt : node.kids) Statement(*stmt);
        break;
      default:
        break;
    }
  }

  void Expression(const Node& node) {
    ++expression_depth_;
    max_expression_depth_ = std::max(max_expression_depth_, expression_depth_);
    EmitExpression(node);
    --expression_depth_;
  }

  void EmitExpression(const Node& node) {
    switch (node.kind) {
      case Kind::kNumber:
        Op("push", node.text);
        break;
      case Kind::kString:
        Op("push_str", node.text);
        break;
      case Kind::kTrue:
      case Kind::kFalse:
        Op("push", node.kind == Kind::kTrue ? "true" : "false");
        break;
      case Kind::kNull:
      case Kind::kUndefined:
        Op("push", node.kind == Kind::kNull ? "null" : "undefined");
        break;
      case Kind::kIdentifier:
        Op("load", node.text);
        break;
      case Kind::kAssign:
        Expression(*node.kids[0]);
        Op("dup");
        Op("store", node.text);
        stores_.insert(node.text);
        break;
      case Kind::kUnary:
        Expression(*node.kids[0]);
        Op(node.text == "typeof" ? "typeof" : node.text == "-" ? "neg" : "not");
        break;
      case Kind::kBinary:
        if (PF_BRANCH(node.text == "&&" || node.text == "||")) {
          const std::string end = Label();
          Expression(*node.kids[0]);
          Op("dup");
          Op(node.text == "&&" ? "jump_if_false" : "jump_if_true", end);
          Op("pop");
          Expression(*node.kids[1]);
          Op("label", end);
        } else {
          Expression(*node.kids[0]);
          Expression(*node.kids[1]);
          Op("binop", node.text);
        }
        break;
      case Kind::kCall:
        for (const auto& kid : node.kids) Expression(*kid);
        Op("call", std::to_string(node.kids.size() - 1));
        ++calls_;
        break;
      case Kind::kIndex:
        Expression(*node.kids[0]);
        Expression(*node.kids[1]);
        Op("get_index");
        break;
      case Kind::kMember:
        Expression(*node.kids[0]);
        Op("get_prop", node.text);
        break;
      case Kind::kFunction:
      case Kind::kArrow: {
        const std::string entry = Label();
        ++closures_;
        if (PF_BRANCH(node.kind == Kind::kArrow && node.kids[0]->kind != Kind::kBlock)) {
          Op("closure", entry);
          Expression(*node.kids[0]);
          Op("ret");
        } else {
          Op("closure", entry);
          auto saved = std::move(loops_);
          loops_.clear();
          for (const auto& stmt : node.kids[0]->kids) Statement(*stmt);
          loops_ = std::move(saved);
          Op("push", "undefined");
          Op("ret");
        }
        if (PF_BRANCH(node.params.size() > 1)) PF_HIT();
        break;
      }
      default:
        break;
    }
  }

  CoverageRecorder& cov_;
  std::string out_;
  std::vector<std::pair<std::string, std::string>> loops_;
  int instructions_ = 0;
  int labels_ = 0;
  int max_loop_depth_ = 0;
  int closures_ = 0;
  int calls_ = 0;
  int branches_ = 0;
  int expression_depth_ = 0;
  int max_expression_depth_ = 0;
  std::set<std::string> stores_;
};

}  // namespace

std::string Compile(Node& program, const CompileOptions& options, CoverageRecorder& cov_) {
  std::deque<Scope> scopes;
  std::vector<std::string> warnings;

  Resolver resolver(cov_, scopes);
  resolver.Program(program);
  if (PF_BRANCH(resolver.max_function_depth >= 2)) PF_HIT();

  for (const ArrowSite& site : resolver.arrows) {
    Node& body = *site.arrow->kids[0];
    const int& binding = internal::Deref(site.scope->Find(body.text), "ArrowNormalizer::InlineBody");
    if (PF_BRANCH(binding == 0 && site.scope->bindings.contains(body.text))) {
      site.arrow->text = "identity";
    } else {
      site.arrow->text = "capture";
    }
  }

  if (PF_BRANCH(!resolver.undeclared.empty())) {
    Reject("variable " + resolver.undeclared.front() + " is undeclared");
  }

  Folder folder(cov_, warnings);
  folder.Statements(program.kids);
  if (PF_BRANCH(folder.folded > 0)) PF_HIT();
  if (PF_BRANCH(folder.folded > 4)) PF_HIT();

  DeadCodeEliminator dce(cov_, warnings);
  dce.List(program.kids, 0);
  if (PF_BRANCH(dce.removed > 0)) PF_HIT();

  if (PF_BRANCH(options.warnings_as_invalid && !warnings.empty())) {
    Reject("warning treated as error: " + warnings.front());
  }

  return Emitter(cov_).Program(program);
}

PointId CompilerSiteCount() { return PF_SITE_COUNT(); }

}  // namespace paramfuzz::miniscript
