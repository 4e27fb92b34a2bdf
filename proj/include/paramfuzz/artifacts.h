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


// On-disk campaign artifacts.
//
//   <out>/campaign.json                     configuration (written by the CLI)
//   <out>/corpus/id_<n>_<reason>.bin        raw octets of a saved sequence
//   <out>/corpus/index.jsonl                one record per corpus entry
//   <out>/failures/<keyhash>_id_<n>.bin     first sequence per failure key
//   <out>/failures/<keyhash>_id_<n>.input   its generated input, for humans
//   <out>/failures/index.jsonl              one record per stored failure
//   <out>/events.jsonl                      one record per execution
//   <out>/stats.jsonl                       periodic and on-event statistics
//   <out>/summary.json                      final in-memory state
//
// The event log has no timestamps, so it is a deterministic function of the
// campaign configuration when the budget is counted in executions.

#ifndef PARAMFUZZ_ARTIFACTS_H_
#define PARAMFUZZ_ARTIFACTS_H_

#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramfuzz/engine.h"

namespace paramfuzz {

// A log or index file that cannot be parsed.
class LogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string CorpusFileName(int64_t id, SaveReason reason);
std::string FailureFileName(const FailureKey& key, int64_t id);

std::string EncodeEvent(const EventRecord& event);
EventRecord DecodeEvent(std::string_view line);
std::string EncodeStats(const StatsRecord& stats);
StatsRecord DecodeStats(std::string_view line);

// A corpus or failure index record.
struct IndexRecord {
  int64_t id = -1;
  std::optional<SaveReason> reason;
  int64_t parent_id = -1;
  Result result = Result::kValid;
  std::vector<PointId> coverage;
  double t = 0;
  std::optional<FailureKey> failure;
  std::string fingerprint;
  std::string file;
};

class ArtifactWriter {
 public:
  // Creates the directory layout. Throws ConfigError if `dir` is unwritable.
  ArtifactWriter(const std::filesystem::path& dir, std::string fingerprint);
  ~ArtifactWriter();

  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  void Event(const EventRecord& event);
  void Stats(const StatsRecord& stats);
  void Corpus(const CorpusEntry& entry);
  void Failure(const FailureEntry& entry);
  void Summary(const CampaignResult& result);

 private:
  std::filesystem::path dir_;
  std::string fingerprint_;
  std::FILE* events_ = nullptr;
  std::FILE* stats_ = nullptr;
  std::FILE* corpus_index_ = nullptr;
  std::FILE* failure_index_ = nullptr;
};

// Readers. Each throws LogError naming the file and line on corrupt input.
// A missing file reads as empty.
std::vector<EventRecord> ReadEvents(const std::filesystem::path& file);
// Streams the event log without holding it in memory.
void ForEachEvent(const std::filesystem::path& file,
                  const std::function<void(const EventRecord&)>& visit);
std::vector<StatsRecord> ReadStats(const std::filesystem::path& file);
std::vector<IndexRecord> ReadIndex(const std::filesystem::path& file);
Bytes ReadBytes(const std::filesystem::path& file);
void WriteBytes(const std::filesystem::path& file, const Bytes& bytes);

}  // namespace paramfuzz

#endif  // PARAMFUZZ_ARTIFACTS_H_
