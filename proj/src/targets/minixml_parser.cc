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

// Well-formedness parser for the mini XML dialect: one root element,
// attributes in single or double quotes, the five predefined entities,
// numeric character references and comments. No DTDs, no CDATA, no
// processing instructions.

#include <cstdint>
#include <string>

#include "paramfuzz/target.h"
#include "targets/faults.h"
#include "targets/instrument.h"
#include "targets/minixml_internal.h"

namespace paramfuzz::minixml {
namespace {

constexpr PointId kRegionBase = kSyntaxBase;
constexpr int kMaxNesting = 256;

bool IsNameStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
}

bool IsNameChar(char c) {
  return IsNameStart(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool IsDigit(char c, int radix) {
  if (c >= '0' && c <= '9') return true;
  return radix == 16 && ((c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'));
}

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Strict integer parse in the style of Integer.parseInt: rejects anything
// that is not a digit of the radix, including the empty string.
uint32_t ParseInt(std::string_view digits, int radix) {
  if (digits.empty()) {
    internal::Fault("NumberFormatException", "For input string: \"\"", "minixml::ParseInt");
  }
  uint32_t value = 0;
  for (char c : digits) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      d = radix;
    }
    if (d >= radix) {
      internal::Fault("NumberFormatException", "bad digit", "minixml::ParseInt");
    }
    value = value * static_cast<uint32_t>(radix) + static_cast<uint32_t>(d);
  }
  return value;
}

void AppendUtf8(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  Parser(std::string_view input, CoverageRecorder& cov) : in_(input), cov_(cov) {}

  Element ParseDocument() {
    SkipMisc();
    if (PF_BRANCH(AtEnd())) Reject("document has no root element");
    if (PF_BRANCH(Peek() != '<')) Reject("content before root element");
    Element root = ParseElement(0);
    SkipMisc();
    if (PF_BRANCH(!AtEnd())) Reject("content after root element");
    return root;
  }

 private:
  [[noreturn]] void Reject(const std::string& why) {
    throw SyntaxRejection("XML parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  bool AtEnd() const { return pos_ >= in_.size(); }
  char Peek() const { return AtEnd() ? '\0' : in_[pos_]; }
  bool StartsWith(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

  void Expect(char c) {
    if (PF_BRANCH(Peek() != c)) Reject(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool SkipSpace() {
    const size_t start = pos_;
    while (!AtEnd() && IsSpace(in_[pos_])) ++pos_;
    return pos_ != start;
  }

  // Whitespace and comments around the root element.
  void SkipMisc() {
    for (;;) {
      SkipSpace();
      if (PF_BRANCH(StartsWith("<!--"))) {
        SkipComment();
      } else {
        return;
      }
    }
  }

  void SkipComment() {
    pos_ += 4;
    const size_t end = in_.find("-->", pos_);
    if (PF_BRANCH(end == std::string_view::npos)) Reject("unterminated comment");
    if (PF_BRANCH(in_.substr(pos_, end - pos_).find("--") != std::string_view::npos)) {
      Reject("'--' inside comment");
    }
    pos_ = end + 3;
  }

  std::string ParseName() {
    if (PF_BRANCH(AtEnd() || !IsNameStart(in_[pos_]))) Reject("expected a name");
    const size_t start = pos_;
    while (!AtEnd() && IsNameChar(in_[pos_])) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  void ParseReference(std::string& out) {
    ++pos_;  // '&'
    if (PF_BRANCH(Peek() == '#')) {
      ++pos_;
      int radix = 10;
      if (PF_BRANCH(Peek() == 'x')) {
        radix = 16;
        ++pos_;
      }
      const size_t start = pos_;
      while (!AtEnd() && IsDigit(in_[pos_], radix)) ++pos_;
      const std::string_view digits = in_.substr(start, pos_ - start);
      if (PF_BRANCH(Peek() != ';')) Reject("unterminated character reference");
      ++pos_;
      if (PF_BRANCH(digits.size() > 7)) Reject("character reference out of range");
      const uint32_t cp = ParseInt(digits, radix);
      if (PF_BRANCH(cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) {
        Reject("invalid character reference");
      }
      AppendUtf8(cp, out);
      return;
    }
    const std::string name = ParseName();
    if (PF_BRANCH(Peek() != ';')) Reject("unterminated entity reference");
    ++pos_;
    if (PF_BRANCH(name == "lt")) {
      out.push_back('<');
    } else if (PF_BRANCH(name == "gt")) {
      out.push_back('>');
    } else if (PF_BRANCH(name == "amp")) {
      out.push_back('&');
    } else if (PF_BRANCH(name == "quot")) {
      out.push_back('"');
    } else if (PF_BRANCH(name == "apos")) {
      out.push_back('\'');
    } else {
      Reject("undefined entity &" + name + ";");
    }
  }

  std::string ParseAttributeValue() {
    const char quote = Peek();
    if (PF_BRANCH(quote != '"' && quote != '\'')) Reject("attribute value must be quoted");
    ++pos_;
    std::string value;
    for (;;) {
      if (PF_BRANCH(AtEnd())) Reject("unterminated attribute value");
      const char c = in_[pos_];
      if (c == quote) break;
      if (PF_BRANCH(c == '<')) Reject("'<' in attribute value");
      if (PF_BRANCH(c == '&')) {
        ParseReference(value);
      } else {
        value.push_back(c);
        ++pos_;
      }
    }
    ++pos_;
    return value;
  }

  Element ParseElement(int nesting) {
    if (PF_BRANCH(nesting > kMaxNesting)) Reject("elements nested too deeply");
    Expect('<');
    Element element;
    element.name = ParseName();
    for (;;) {
      const bool spaced = SkipSpace();
      if (PF_BRANCH(StartsWith("/>"))) {
        pos_ += 2;
        return element;
      }
      if (PF_BRANCH(Peek() == '>')) {
        ++pos_;
        break;
      }
      if (PF_BRANCH(!spaced)) Reject("expected whitespace before attribute");
      std::string key = ParseName();
      SkipSpace();
      Expect('=');
      SkipSpace();
      std::string value = ParseAttributeValue();
      if (PF_BRANCH(element.Attribute(key) != nullptr)) Reject("duplicate attribute " + key);
      element.attributes.emplace_back(std::move(key), std::move(value));
    }
    ParseContent(element, nesting);
    return element;
  }

  void ParseContent(Element& element, int nesting) {
    for (;;) {
      if (PF_BRANCH(AtEnd())) Reject("unclosed element <" + element.name + ">");
      const char c = in_[pos_];
      if (c == '<') {
        if (PF_BRANCH(StartsWith("</"))) {
          pos_ += 2;
          const std::string name = ParseName();
          if (PF_BRANCH(name != element.name)) {
            Reject("end tag </" + name + "> does not match <" + element.name + ">");
          }
          SkipSpace();
          Expect('>');
          return;
        }
        if (PF_BRANCH(StartsWith("<!--"))) {
          SkipComment();
          continue;
        }
        if (PF_BRANCH(StartsWith("<!") || StartsWith("<?"))) {
          Reject("unsupported markup declaration");
        }
        element.children.push_back(ParseElement(nesting + 1));
      } else if (PF_BRANCH(c == '&')) {
        ParseReference(element.text);
      } else {
        if (PF_BRANCH(c == '>' && element.text.ends_with("]]"))) Reject("']]>' in content");
        element.text.push_back(c);
        ++pos_;
      }
    }
  }

  std::string_view in_;
  size_t pos_ = 0;
  CoverageRecorder& cov_;
};

}  // namespace

Element ParseDocument(std::string_view input, CoverageRecorder& cov) {
  return Parser(input, cov).ParseDocument();
}

PointId ParserSiteCount() { return PF_SITE_COUNT(); }

}  // namespace paramfuzz::minixml
