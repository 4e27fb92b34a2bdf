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

// Coverage points, per-run recording and cumulative coverage sets.
//
// Point ids live in a 2^16 space per target. The region of a point is a
// function of its id prefix, so a target partitions its points simply by
// choosing which range an instrumentation site draws from:
//   [0x0000, 0x4000)  SYNTAX
//   [0x4000, 0x8000)  SEMANTIC
//   [0x8000, 0x10000) OTHER

#ifndef PARAMFUZZ_COVERAGE_H_
#define PARAMFUZZ_COVERAGE_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace paramfuzz {

using PointId = uint32_t;

inline constexpr PointId kPointSpace = 1u << 16;
inline constexpr PointId kSyntaxBase = 0x0000;
inline constexpr PointId kSemanticBase = 0x4000;
inline constexpr PointId kOtherBase = 0x8000;

enum class Region : uint8_t { kSyntax, kSemantic, kOther };

constexpr Region RegionOf(PointId id) {
  if (id < kSemanticBase) return Region::kSyntax;
  if (id < kOtherBase) return Region::kSemantic;
  return Region::kOther;
}

std::string_view RegionName(Region region);

struct CoveragePoint {
  PointId id;
  Region region;
};

// Set of point ids with plain set semantics. Stored sorted and unique.
class CoverageSet {
 public:
  CoverageSet() = default;
  CoverageSet(std::initializer_list<PointId> ids);
  static CoverageSet FromIds(std::vector<PointId> ids);

  bool Insert(PointId id);
  bool Contains(PointId id) const;
  size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<PointId>& ids() const { return ids_; }

  bool IsSubsetOf(const CoverageSet& other) const;
  // Adds every point of `other`; returns the points that were new.
  std::vector<PointId> UnionWith(const CoverageSet& other);
  // Points of this set that are absent from `other`.
  std::vector<PointId> Difference(const CoverageSet& other) const;
  CoverageSet Filter(Region region) const;
  size_t CountRegion(Region region) const;

  bool operator==(const CoverageSet&) const = default;

 private:
  std::vector<PointId> ids_;
};

// True iff `run` has a point that `cumulative` lacks.
bool NewCoverage(const CoverageSet& run, const CoverageSet& cumulative);

// Collects the points hit during one target execution.
class CoverageRecorder {
 public:
  CoverageRecorder();

  // Clears the previous run and starts recording.
  void Begin();
  // Stops recording and returns the run's set.
  CoverageSet End();

  void Record(PointId id) {
    if (!active_) return;
    last_ = id;
    const uint64_t bit = uint64_t{1} << (id & 63);
    uint64_t& word = bitmap_[(id >> 6) & (kWords - 1)];
    if (word & bit) return;
    word |= bit;
    hits_.push_back(id);
  }

  bool active() const { return active_; }
  // Most recently recorded point of the current run, or -1.
  int64_t last_point() const { return last_; }

 private:
  static constexpr size_t kWords = kPointSpace / 64;

  std::array<uint64_t, kWords> bitmap_{};
  std::vector<PointId> hits_;
  int64_t last_ = -1;
  bool active_ = false;
};

// Static description of a target's coverage points.
struct PointTable {
  // Declared point count per region. Ids of a region are
  // [base, base + count).
  uint32_t syntax_points = 0;
  uint32_t semantic_points = 0;
  uint32_t other_points = 0;

  bool Declares(PointId id) const;
};

struct SemanticTally {
  size_t count = 0;
  double ratio = 0.0;
};

// Semantic points in `cumulative` and their share of the declared total.
SemanticTally SemanticBranchCount(const CoverageSet& cumulative,
                                  const PointTable& table);

}  // namespace paramfuzz

#endif  // PARAMFUZZ_COVERAGE_H_
