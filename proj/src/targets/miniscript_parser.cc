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

// Recursive-descent parser for the script subset. Semicolons are mandatory
// (no automatic insertion). Early errors such as `break` outside a loop are
// not checked here; they belong to the compiler.

#include <cstdlib>
#include <string>

#include "paramfuzz/target.h"
#include "targets/instrument.h"
#include "targets/miniscript_internal.h"

namespace paramfuzz::miniscript {
namespace {

constexpr PointId kRegionBase = kSyntaxBase;
constexpr int kMaxNesting = 200;

enum class Tok { kEnd, kNumber, kString, kName, kPunct };

struct Token {
  Tok type = Tok::kEnd;
  std::string text;
  double number = 0;
  size_t offset = 0;
};

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}
bool IsIdentPart(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsReserved(std::string_view w) {
  return w == "var" || w == "if" || w == "else" || w == "while" || w == "break" ||
         w == "continue" || w == "return" || w == "function" || w == "true" ||
         w == "false" || w == "null" || w == "typeof";
}

class Parser {
 public:
  Parser(std::string_view input, CoverageRecorder& cov) : in_(input), cov_(cov) { Advance(); }

  NodePtr Program() {
    auto program = std::make_unique<Node>(Kind::kProgram);
    while (PF_BRANCH(tok_.type != Tok::kEnd)) program->kids.push_back(Statement());
    return program;
  }

 private:
  [[noreturn]] void Reject(const std::string& why) {
    throw SyntaxRejection("SyntaxError at offset " + std::to_string(tok_.offset) + ": " + why);
  }

  // ---- lexer ----

  void SkipTrivia() {
    for (;;) {
      while (pos_ < in_.size() && (in_[pos_] == ' ' || in_[pos_] == '\n' || in_[pos_] == '\t' ||
                                   in_[pos_] == '\r')) {
        ++pos_;
      }
      if (PF_BRANCH(in_.substr(pos_, 2) == "//")) {
        while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
        continue;
      }
      if (PF_BRANCH(in_.substr(pos_, 2) == "/*")) {
        const size_t end = in_.find("*/", pos_ + 2);
        if (PF_BRANCH(end == std::string_view::npos)) Reject("unterminated comment");
        pos_ = end + 2;
        continue;
      }
      return;
    }
  }

  void Advance() {
    SkipTrivia();
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= in_.size()) return;
    const char c = in_[pos_];
    if (PF_BRANCH(IsDigit(c))) {
      const size_t start = pos_;
      while (pos_ < in_.size() && IsDigit(in_[pos_])) ++pos_;
      if (PF_BRANCH(pos_ < in_.size() && in_[pos_] == '.')) {
        ++pos_;
        while (pos_ < in_.size() && IsDigit(in_[pos_])) ++pos_;
      }
      if (PF_BRANCH(pos_ < in_.size() && IsIdentStart(in_[pos_]))) {
        Reject("identifier starts immediately after numeric literal");
      }
      tok_.type = Tok::kNumber;
      tok_.text = std::string(in_.substr(start, pos_ - start));
      tok_.number = std::strtod(tok_.text.c_str(), nullptr);
      return;
    }
    if (PF_BRANCH(IsIdentStart(c))) {
      const size_t start = pos_;
      while (pos_ < in_.size() && IsIdentPart(in_[pos_])) ++pos_;
      tok_.type = Tok::kName;
      tok_.text = std::string(in_.substr(start, pos_ - start));
      return;
    }
    if (PF_BRANCH(c == '"' || c == '\'')) {
      ++pos_;
      std::string value;
      for (;;) {
        if (PF_BRANCH(pos_ >= in_.size() || in_[pos_] == '\n')) Reject("unterminated string literal");
        const char d = in_[pos_++];
        if (d == c) break;
        if (PF_BRANCH(d == '\\')) {
          if (PF_BRANCH(pos_ >= in_.size())) Reject("unterminated string literal");
          const char e = in_[pos_++];
          value.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
        } else {
          value.push_back(d);
        }
      }
      tok_.type = Tok::kString;
      tok_.text = std::move(value);
      return;
    }
    static constexpr std::string_view kPuncts[] = {
        "===", "!==", "=>", "==", "!=", "<=", ">=", "&&", "||", "(", ")", "{", "}", "[", "]",
        ";",   ",",   "=",  "!",  "+",  "-",  "*",  "/",  "%",  "<", ">", "."};
    for (std::string_view p : kPuncts) {
      if (in_.substr(pos_, p.size()) == p) {
        tok_.type = Tok::kPunct;
        tok_.text = std::string(p);
        pos_ += p.size();
        return;
      }
    }
    Reject(std::string("unexpected character '") + c + "'");
  }

  bool Is(std::string_view punct) const { return tok_.type == Tok::kPunct && tok_.text == punct; }
  bool IsWord(std::string_view word) const { return tok_.type == Tok::kName && tok_.text == word; }

  void Expect(std::string_view punct) {
    if (PF_BRANCH(!Is(punct))) Reject("expected '" + std::string(punct) + "'");
    Advance();
  }

  std::string ExpectIdentifier() {
    if (PF_BRANCH(tok_.type != Tok::kName || IsReserved(tok_.text))) Reject("expected identifier");
    std::string name = tok_.text;
    Advance();
    return name;
  }

  struct Nest {
    explicit Nest(Parser& p) : p(p) {
      if (++p.nesting_ > kMaxNesting) p.Reject("program nested too deeply");
    }
    ~Nest() { --p.nesting_; }
    Parser& p;
  };

  // ---- statements ----

  NodePtr Statement() {
    Nest nest(*this);
    if (PF_BRANCH(Is("{"))) return Block();
    if (PF_BRANCH(Is(";"))) {
      Advance();
      return std::make_unique<Node>(Kind::kEmpty);
    }
    if (tok_.type == Tok::kName) {
      if (PF_BRANCH(tok_.text == "var")) {
        Advance();
        auto node = std::make_unique<Node>(Kind::kVar);
        node->text = ExpectIdentifier();
        if (PF_BRANCH(Is("="))) {
          Advance();
          node->kids.push_back(Assignment());
        }
        Expect(";");
        return node;
      }
      if (PF_BRANCH(tok_.text == "if")) {
        Advance();
        auto node = std::make_unique<Node>(Kind::kIf);
        Expect("(");
        node->kids.push_back(Expression());
        Expect(")");
        node->kids.push_back(Statement());
        if (PF_BRANCH(IsWord("else"))) {
          Advance();
          node->kids.push_back(Statement());
        }
        return node;
      }
      if (PF_BRANCH(tok_.text == "while")) {
        Advance();
        auto node = std::make_unique<Node>(Kind::kWhile);
        Expect("(");
        node->kids.push_back(Expression());
        Expect(")");
        node->kids.push_back(Statement());
        return node;
      }
      if (PF_BRANCH(tok_.text == "break" || tok_.text == "continue")) {
        auto node = std::make_unique<Node>(tok_.text == "break" ? Kind::kBreak : Kind::kContinue);
        Advance();
        Expect(";");
        return node;
      }
      if (PF_BRANCH(tok_.text == "return")) {
        Advance();
        auto node = std::make_unique<Node>(Kind::kReturn);
        if (PF_BRANCH(!Is(";"))) node->kids.push_back(Expression());
        Expect(";");
        return node;
      }
      if (PF_BRANCH(tok_.text == "else")) Reject("'else' without 'if'");
    }
    auto node = std::make_unique<Node>(Kind::kExpressionStatement);
    node->kids.push_back(Expression());
    Expect(";");
    return node;
  }

  NodePtr Block() {
    Expect("{");
    auto block = std::make_unique<Node>(Kind::kBlock);
    while (!Is("}")) {
      if (PF_BRANCH(tok_.type == Tok::kEnd)) Reject("unterminated block");
      block->kids.push_back(Statement());
    }
    Advance();
    return block;
  }

  // ---- expressions ----

  NodePtr Expression() { return Assignment(); }

  NodePtr Assignment() {
    Nest nest(*this);
    NodePtr lhs = LogicalOr();
    if (PF_BRANCH(Is("="))) {
      if (PF_BRANCH(lhs->kind != Kind::kIdentifier)) Reject("invalid assignment target");
      Advance();
      auto node = std::make_unique<Node>(Kind::kAssign);
      node->text = lhs->text;
      node->kids.push_back(Assignment());
      return node;
    }
    return lhs;
  }

  NodePtr Binary(NodePtr lhs, std::string op, NodePtr rhs) {
    auto node = std::make_unique<Node>(Kind::kBinary);
    node->text = std::move(op);
    node->kids.push_back(std::move(lhs));
    node->kids.push_back(std::move(rhs));
    return node;
  }

  NodePtr LogicalOr() {
    NodePtr lhs = LogicalAnd();
    while (PF_BRANCH(Is("||"))) {
      Advance();
      lhs = Binary(std::move(lhs), "||", LogicalAnd());
    }
    return lhs;
  }

  NodePtr LogicalAnd() {
    NodePtr lhs = Equality();
    while (PF_BRANCH(Is("&&"))) {
      Advance();
      lhs = Binary(std::move(lhs), "&&", Equality());
    }
    return lhs;
  }

  NodePtr Equality() {
    NodePtr lhs = Relational();
    while (PF_BRANCH(Is("==") || Is("===") || Is("!=") || Is("!=="))) {
      std::string op = tok_.text;
      Advance();
      lhs = Binary(std::move(lhs), std::move(op), Relational());
    }
    return lhs;
  }

  NodePtr Relational() {
    NodePtr lhs = Additive();
    while (PF_BRANCH(Is("<") || Is(">") || Is("<=") || Is(">="))) {
      std::string op = tok_.text;
      Advance();
      lhs = Binary(std::move(lhs), std::move(op), Additive());
    }
    return lhs;
  }

  NodePtr Additive() {
    NodePtr lhs = Multiplicative();
    while (PF_BRANCH(Is("+") || Is("-"))) {
      std::string op = tok_.text;
      Advance();
      lhs = Binary(std::move(lhs), std::move(op), Multiplicative());
    }
    return lhs;
  }

  NodePtr Multiplicative() {
    NodePtr lhs = Unary();
    while (PF_BRANCH(Is("*") || Is("/") || Is("%"))) {
      std::string op = tok_.text;
      Advance();
      lhs = Binary(std::move(lhs), std::move(op), Unary());
    }
    return lhs;
  }

  NodePtr Unary() {
    Nest nest(*this);
    if (PF_BRANCH(Is("-") || Is("!") || IsWord("typeof"))) {
      auto node = std::make_unique<Node>(Kind::kUnary);
      node->text = tok_.text;
      Advance();
      node->kids.push_back(Unary());
      return node;
    }
    return Postfix();
  }

  NodePtr Postfix() {
    NodePtr expr = Primary();
    for (;;) {
      if (PF_BRANCH(Is("("))) {
        Advance();
        auto call = std::make_unique<Node>(Kind::kCall);
        call->kids.push_back(std::move(expr));
        if (!Is(")")) {
          for (;;) {
            call->kids.push_back(Assignment());
            if (PF_BRANCH(Is(","))) {
              Advance();
              continue;
            }
            break;
          }
        }
        Expect(")");
        expr = std::move(call);
      } else if (PF_BRANCH(Is("["))) {
        Advance();
        auto index = std::make_unique<Node>(Kind::kIndex);
        index->kids.push_back(std::move(expr));
        index->kids.push_back(Expression());
        Expect("]");
        expr = std::move(index);
      } else if (PF_BRANCH(Is("."))) {
        Advance();
        auto member = std::make_unique<Node>(Kind::kMember);
        if (PF_BRANCH(tok_.type != Tok::kName)) Reject("expected property name");
        member->text = tok_.text;
        Advance();
        member->kids.push_back(std::move(expr));
        expr = std::move(member);
      } else {
        return expr;
      }
    }
  }

  // At '(' : is this the parameter list of an arrow function?
  bool LooksLikeArrow() const {
    size_t p = pos_;
    auto skip = [&] {
      while (p < in_.size() && (in_[p] == ' ' || in_[p] == '\n' || in_[p] == '\t')) ++p;
    };
    bool expect_name = true;
    for (;;) {
      skip();
      if (p >= in_.size()) return false;
      if (in_[p] == ')') {
        ++p;
        skip();
        return in_.substr(p, 2) == "=>";
      }
      if (expect_name) {
        if (!IsIdentStart(in_[p])) return false;
        while (p < in_.size() && IsIdentPart(in_[p])) ++p;
        expect_name = false;
      } else {
        if (in_[p] != ',') return false;
        ++p;
        expect_name = true;
      }
    }
  }

  std::vector<std::string> Params() {
    Expect("(");
    std::vector<std::string> params;
    if (!Is(")")) {
      for (;;) {
        params.push_back(ExpectIdentifier());
        if (PF_BRANCH(Is(","))) {
          Advance();
          continue;
        }
        break;
      }
    }
    Expect(")");
    return params;
  }

  NodePtr Primary() {
    switch (tok_.type) {
      case Tok::kNumber: {
        auto node = std::make_unique<Node>(Kind::kNumber);
        node->number = tok_.number;
        node->text = tok_.text;
        Advance();
        return node;
      }
      case Tok::kString: {
        auto node = std::make_unique<Node>(Kind::kString);
        node->text = tok_.text;
        Advance();
        return node;
      }
      case Tok::kName: {
        const std::string word = tok_.text;
        if (PF_BRANCH(word == "true" || word == "false" || word == "null" || word == "undefined")) {
          Advance();
          return std::make_unique<Node>(word == "true"    ? Kind::kTrue
                                        : word == "false" ? Kind::kFalse
                                        : word == "null"  ? Kind::kNull
                                                          : Kind::kUndefined);
        }
        if (PF_BRANCH(word == "function")) {
          Advance();
          auto fn = std::make_unique<Node>(Kind::kFunction);
          fn->params = Params();
          fn->kids.push_back(Block());
          return fn;
        }
        if (PF_BRANCH(IsReserved(word))) Reject("unexpected keyword '" + word + "'");
        Advance();
        if (PF_BRANCH(Is("=>"))) {
          Advance();
          auto arrow = std::make_unique<Node>(Kind::kArrow);
          arrow->params.push_back(word);
          arrow->kids.push_back(ArrowBody());
          return arrow;
        }
        auto node = std::make_unique<Node>(Kind::kIdentifier);
        node->text = word;
        return node;
      }
      case Tok::kPunct:
        if (PF_BRANCH(Is("("))) {
          if (PF_BRANCH(LooksLikeArrow())) {
            auto arrow = std::make_unique<Node>(Kind::kArrow);
            arrow->params = Params();
            Expect("=>");
            arrow->kids.push_back(ArrowBody());
            return arrow;
          }
          Advance();
          NodePtr inner = Expression();
          Expect(")");
          return inner;
        }
        Reject("unexpected '" + tok_.text + "'");
      case Tok::kEnd:
        Reject("unexpected end of input");
    }
    Reject("unexpected token");
  }

  NodePtr ArrowBody() {
    if (PF_BRANCH(Is("{"))) return Block();
    return Assignment();
  }

  std::string_view in_;
  size_t pos_ = 0;
  Token tok_;
  int nesting_ = 0;
  CoverageRecorder& cov_;
};

}  // namespace

NodePtr ParseProgram(std::string_view input, CoverageRecorder& cov) {
  return Parser(input, cov).Program();
}

PointId ParserSiteCount() { return PF_SITE_COUNT(); }

}  // namespace paramfuzz::miniscript
