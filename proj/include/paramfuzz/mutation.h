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

// Byte-replacement mutation shared by the Zest and byte-level engines.
//
// A mutant is produced by m sequential window replacements, m drawn from a
// geometric distribution on {1, 2, ...}. Each window has a length l drawn
// from the same family, a uniform offset k, and positions [k, min(k+l, len))
// are overwritten with uniform random octets. Length never changes.

#ifndef PARAMFUZZ_MUTATION_H_
#define PARAMFUZZ_MUTATION_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "paramfuzz/param.h"

namespace paramfuzz {

struct MutationParams {
  double mean_count = 4.0;
  double mean_length = 4.0;
  uint64_t rng_seed = 0;
};

struct MutationWindow {
  size_t offset = 0;
  // Sampled length, before clipping at the end of the sequence.
  size_t length = 0;
  // One past the last replaced position.
  size_t end = 0;
};

struct MutationTrace {
  size_t count = 0;
  std::vector<MutationWindow> windows;
};

class Mutator {
 public:
  // Throws std::invalid_argument unless both means are >= 1.
  explicit Mutator(const MutationParams& params);

  // `parent` must be nonempty. `trace` may be null.
  Bytes Mutate(const Bytes& parent, MutationTrace* trace = nullptr);

 private:
  std::mt19937_64 rng_;
  std::geometric_distribution<size_t> count_;
  std::geometric_distribution<size_t> length_;
};

}  // namespace paramfuzz

#endif  // PARAMFUZZ_MUTATION_H_
