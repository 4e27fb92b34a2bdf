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

#include "paramfuzz/mutation.h"

#include <algorithm>
#include <stdexcept>

namespace paramfuzz {

// std::geometric_distribution counts failures before the first success, so
// 1 + X has support {1, 2, ...} and mean 1/p. p = 1/mean gives the mean.
Mutator::Mutator(const MutationParams& params)
    : rng_(params.rng_seed),
      count_(params.mean_count >= 1 ? 1.0 / params.mean_count : 1.0),
      length_(params.mean_length >= 1 ? 1.0 / params.mean_length : 1.0) {
  if (!(params.mean_count >= 1) || !(params.mean_length >= 1)) {
    throw std::invalid_argument("mutation means must be >= 1");
  }
}

Bytes Mutator::Mutate(const Bytes& parent, MutationTrace* trace) {
  if (parent.empty()) throw std::invalid_argument("cannot mutate an empty sequence");
  Bytes child = parent;
  const size_t m = 1 + count_(rng_);
  if (trace != nullptr) {
    trace->count = m;
    trace->windows.clear();
  }
  std::uniform_int_distribution<size_t> offset(0, child.size() - 1);
  for (size_t i = 0; i < m; ++i) {
    const size_t len = 1 + length_(rng_);
    const size_t k = offset(rng_);
    const size_t end = std::min(child.size(), k + len);
    for (size_t j = k; j < end; ++j) child[j] = static_cast<uint8_t>(rng_());
    if (trace != nullptr) trace->windows.push_back({k, len, end});
  }
  return child;
}

}  // namespace paramfuzz
