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

// Static branch instrumentation for the built-in targets.
//
// Every PF_BRANCH / PF_HIT use site takes the next __COUNTER__ value of its
// translation unit and owns two point ids: base + 2*site (false arm) and
// base + 2*site + 1 (true arm). PF_HIT only ever records the true arm. Each
// instrumented translation unit belongs to exactly one region and exports
// its site count via PF_SITE_COUNT() at the end of the file, so the
// declared point total is 2 * sites.

#ifndef PARAMFUZZ_SRC_TARGETS_INSTRUMENT_H_
#define PARAMFUZZ_SRC_TARGETS_INSTRUMENT_H_

#include "paramfuzz/coverage.h"

namespace paramfuzz::internal {

inline bool Branch(CoverageRecorder& rec, PointId base, PointId site, bool cond) {
  rec.Record(base + 2 * site + (cond ? 1 : 0));
  return cond;
}

inline void Hit(CoverageRecorder& rec, PointId base, PointId site) {
  rec.Record(base + 2 * site + 1);
}

}  // namespace paramfuzz::internal

// Requires `cov_` (a CoverageRecorder&) and `kRegionBase` in scope.
#define PF_BRANCH(cond) \
  ::paramfuzz::internal::Branch(cov_, kRegionBase, __COUNTER__, static_cast<bool>(cond))
#define PF_HIT() ::paramfuzz::internal::Hit(cov_, kRegionBase, __COUNTER__)
#define PF_SITE_COUNT() (static_cast<::paramfuzz::PointId>(__COUNTER__))

#endif  // PARAMFUZZ_SRC_TARGETS_INSTRUMENT_H_
