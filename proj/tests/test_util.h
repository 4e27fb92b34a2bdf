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


#ifndef PARAMFUZZ_TESTS_TEST_UTIL_H_
#define PARAMFUZZ_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>

#include "paramfuzz/generator.h"
#include "paramfuzz/param.h"

namespace paramfuzz::testing {

inline Bytes Octets(std::initializer_list<int> values) {
  Bytes out;
  for (int v : values) out.push_back(static_cast<uint8_t>(v));
  return out;
}

// The configuration of the hand-worked XML example: no literal pools, so
// every octet of the trace is a length, a character, a count or a flag.
inline GeneratorConfig WorkedExampleConfig() {
  GeneratorConfig config;
  config.max_depth = 5;
  config.max_children = 4;
  config.max_str_len = 10;
  return config;
}

// Trace for <foo><bar>Hello</bar><baz /></foo>.
inline Bytes WorkedExampleTrace() {
  return Octets({2, 'f', 'o', 'o', 2,                     // root name, two children
                 2, 'b', 'a', 'r', 0, 1, 4, 'H', 'e', 'l', 'l', 'o',  // <bar>Hello</bar>
                 2, 'b', 'a', 'z', 0, 0,                  // <baz />
                 0});                                     // root has no text
}

// Generates with strict replay (no extension).
inline std::string GenerateStrict(const Generator& generator, Bytes bytes) {
  ParameterSequence sequence{std::move(bytes)};
  ParametricSource source(sequence, nullptr);
  return generator.Generate(source).text;
}

inline Bytes RandomBytes(std::mt19937_64& rng, size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<uint8_t>(rng());
  return out;
}

// A fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("paramfuzz_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace paramfuzz::testing

#endif  // PARAMFUZZ_TESTS_TEST_UTIL_H_
