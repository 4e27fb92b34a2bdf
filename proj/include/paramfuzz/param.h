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

// Parameter sequences and the typed decoders that turn them into random
// choices.
//
// A generator written against ParametricSource behaves like an ordinary
// random generator, except that every "random" octet comes from a stored
// byte sequence. When the stored bytes run out the source appends octets
// from a deterministic extension stream, so the final sequence always fully
// determines the run and can be replayed without the stream.

#ifndef PARAMFUZZ_PARAM_H_
#define PARAMFUZZ_PARAM_H_

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paramfuzz {

using Bytes = std::vector<uint8_t>;

inline constexpr size_t kDefaultSequenceCap = 64 * 1024;

// Raised when a generator is used incorrectly (empty choice list, empty
// range). This is a bug in the generator, never a target FAILURE.
class GeneratorDefinitionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when extension would grow a sequence past its cap. The candidate is
// discarded by the engine.
class SequenceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised in strict replay mode when the generator asks for more octets than
// the stored sequence holds.
class ReplayExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParameterSequence {
  Bytes bytes;
  // Unique within a campaign. The engines use the execution index.
  int64_t id = -1;
};

// Counter-based octet stream: octet i is a fixed function of (seed, i).
// One stream lives for a whole campaign; appended octets are persisted into
// the sequences that consumed them.
class ExtensionStream {
 public:
  explicit ExtensionStream(uint64_t seed) : seed_(seed) {}

  uint8_t Next();
  uint64_t position() const { return counter_; }

 private:
  uint64_t seed_;
  uint64_t counter_ = 0;
  uint64_t block_ = 0;
};

class ParametricSource {
 public:
  // `extension` may be null for strict replay: exhaustion then throws
  // ReplayExhausted instead of extending.
  ParametricSource(ParameterSequence& sequence, ExtensionStream* extension,
                   size_t cap = kDefaultSequenceCap);

  ParametricSource(const ParametricSource&) = delete;
  ParametricSource& operator=(const ParametricSource&) = delete;

  // One octet n; returns n mod (b - a) + a. Ranges wider than 256 consume
  // four octets, little-endian.
  int64_t NextIntInRange(int64_t a, int64_t b);
  // One octet; true iff its least-significant bit is set.
  bool NextBool();
  // One octet; the character with that code point.
  unsigned char NextChar();
  // Raw octet.
  uint8_t NextByte();

  // items[nextIntInRange(0, size)] for any random-access range.
  template <typename Range>
  const auto& ChooseFrom(const Range& items) {
    const auto size = static_cast<int64_t>(std::size(items));
    if (size == 0) throw GeneratorDefinitionError("ChooseFrom on empty collection");
    return items[static_cast<size_t>(NextIntInRange(0, size))];
  }

  // Draws `needed` octets from the extension stream and appends them to the
  // sequence. Only valid when the cursor sits at the end of the sequence.
  std::span<const uint8_t> Extend(size_t needed);

  size_t cursor() const { return cursor_; }
  size_t consumed() const { return consumed_; }
  size_t extended() const { return extended_; }
  const ParameterSequence& sequence() const { return sequence_; }

 private:
  std::span<const uint8_t> AppendFromStream(size_t needed);

  ParameterSequence& sequence_;
  ExtensionStream* extension_;
  size_t cap_;
  size_t cursor_ = 0;
  size_t consumed_ = 0;
  size_t extended_ = 0;
};

}  // namespace paramfuzz

#endif  // PARAMFUZZ_PARAM_H_
