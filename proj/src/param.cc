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

#include "paramfuzz/param.h"

#include <string>

#include "paramfuzz/hash.h"

namespace paramfuzz {

uint8_t ExtensionStream::Next() {
  const uint64_t lane = counter_ % 8;
  if (lane == 0) block_ = SplitMix64(seed_ ^ (counter_ / 8 + 1) * 0x9E3779B97F4A7C15ULL);
  ++counter_;
  return static_cast<uint8_t>(block_ >> (lane * 8));
}

ParametricSource::ParametricSource(ParameterSequence& sequence,
                                   ExtensionStream* extension, size_t cap)
    : sequence_(sequence), extension_(extension), cap_(cap) {}

uint8_t ParametricSource::NextByte() {
  uint8_t octet;
  if (cursor_ < sequence_.bytes.size()) {
    octet = sequence_.bytes[cursor_++];
  } else {
    octet = AppendFromStream(1)[0];
  }
  ++consumed_;
  return octet;
}

int64_t ParametricSource::NextIntInRange(int64_t a, int64_t b) {
  if (a >= b) {
    throw GeneratorDefinitionError("NextIntInRange requires a < b, got [" +
                                   std::to_string(a) + ", " +
                                   std::to_string(b) + ")");
  }
  const uint64_t width = static_cast<uint64_t>(b) - static_cast<uint64_t>(a);
  uint64_t n;
  if (width <= 256) {
    n = NextByte();
  } else {
    n = 0;
    for (int i = 0; i < 4; ++i) n |= static_cast<uint64_t>(NextByte()) << (8 * i);
  }
  return static_cast<int64_t>(static_cast<uint64_t>(a) + n % width);
}

bool ParametricSource::NextBool() { return (NextByte() & 1) != 0; }

unsigned char ParametricSource::NextChar() { return NextByte(); }

std::span<const uint8_t> ParametricSource::Extend(size_t needed) {
  if (cursor_ != sequence_.bytes.size()) {
    throw GeneratorDefinitionError("Extend called before the sequence was exhausted");
  }
  auto octets = AppendFromStream(needed);
  consumed_ += octets.size();
  return octets;
}

std::span<const uint8_t> ParametricSource::AppendFromStream(size_t needed) {
  if (needed == 0) return {};
  if (extension_ == nullptr) {
    throw ReplayExhausted("parameter sequence exhausted at octet " +
                          std::to_string(cursor_) + " during strict replay");
  }
  if (sequence_.bytes.size() + needed > cap_) {
    throw SequenceCapExceeded("parameter sequence would exceed " +
                              std::to_string(cap_) + " octets");
  }
  const size_t start = sequence_.bytes.size();
  for (size_t i = 0; i < needed; ++i) sequence_.bytes.push_back(extension_->Next());
  extended_ += needed;
  cursor_ = sequence_.bytes.size();
  return std::span<const uint8_t>(sequence_.bytes).subspan(start, needed);
}

}  // namespace paramfuzz
