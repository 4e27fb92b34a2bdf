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

#include "paramfuzz/coverage.h"

#include <algorithm>
#include <iterator>

namespace paramfuzz {

std::string_view RegionName(Region region) {
  switch (region) {
    case Region::kSyntax:
      return "SYNTAX";
    case Region::kSemantic:
      return "SEMANTIC";
    case Region::kOther:
      return "OTHER";
  }
  return "OTHER";
}

CoverageSet::CoverageSet(std::initializer_list<PointId> ids)
    : CoverageSet(FromIds(std::vector<PointId>(ids))) {}

CoverageSet CoverageSet::FromIds(std::vector<PointId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  CoverageSet set;
  set.ids_ = std::move(ids);
  return set;
}

bool CoverageSet::Insert(PointId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it != ids_.end() && *it == id) return false;
  ids_.insert(it, id);
  return true;
}

bool CoverageSet::Contains(PointId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool CoverageSet::IsSubsetOf(const CoverageSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

std::vector<PointId> CoverageSet::UnionWith(const CoverageSet& other) {
  std::vector<PointId> added = other.Difference(*this);
  if (added.empty()) return added;
  std::vector<PointId> merged;
  merged.reserve(ids_.size() + added.size());
  std::merge(ids_.begin(), ids_.end(), added.begin(), added.end(),
             std::back_inserter(merged));
  ids_ = std::move(merged);
  return added;
}

std::vector<PointId> CoverageSet::Difference(const CoverageSet& other) const {
  std::vector<PointId> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(out));
  return out;
}

CoverageSet CoverageSet::Filter(Region region) const {
  CoverageSet out;
  for (PointId id : ids_) {
    if (RegionOf(id) == region) out.ids_.push_back(id);
  }
  return out;
}

size_t CoverageSet::CountRegion(Region region) const {
  return static_cast<size_t>(std::count_if(
      ids_.begin(), ids_.end(), [region](PointId id) { return RegionOf(id) == region; }));
}

bool NewCoverage(const CoverageSet& run, const CoverageSet& cumulative) {
  return !run.IsSubsetOf(cumulative);
}

CoverageRecorder::CoverageRecorder() { hits_.reserve(1024); }

void CoverageRecorder::Begin() {
  for (PointId id : hits_) bitmap_[(id >> 6) & (kWords - 1)] = 0;
  hits_.clear();
  last_ = -1;
  active_ = true;
}

CoverageSet CoverageRecorder::End() {
  active_ = false;
  return CoverageSet::FromIds(hits_);
}

bool PointTable::Declares(PointId id) const {
  switch (RegionOf(id)) {
    case Region::kSyntax:
      return id - kSyntaxBase < syntax_points;
    case Region::kSemantic:
      return id - kSemanticBase < semantic_points;
    case Region::kOther:
      return id - kOtherBase < other_points;
  }
  return false;
}

SemanticTally SemanticBranchCount(const CoverageSet& cumulative,
                                  const PointTable& table) {
  SemanticTally tally;
  tally.count = cumulative.CountRegion(Region::kSemantic);
  if (table.semantic_points > 0) {
    tally.ratio = static_cast<double>(tally.count) / table.semantic_points;
  }
  return tally;
}

}  // namespace paramfuzz
