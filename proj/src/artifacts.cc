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


#include "paramfuzz/artifacts.h"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

namespace paramfuzz {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

json KeyToJson(const FailureKey& key) {
  return {{"type", key.error_type}, {"message", key.message}, {"location", key.location}};
}

FailureKey KeyFromJson(const json& j) {
  return {j.at("type").get<std::string>(), j.at("message").get<std::string>(),
          j.at("location").get<std::string>()};
}

std::FILE* OpenOrThrow(const fs::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw ConfigError("cannot write " + path.string());
  return f;
}

void WriteLine(std::FILE* f, const std::string& line) {
  std::fwrite(line.data(), 1, line.size(), f);
  std::fputc('\n', f);
}

void AppendIds(std::string& out, const std::vector<PointId>& ids) {
  out += '[';
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ids[i]);
  }
  out += ']';
}

template <typename Decode, typename Sink>
void ForEachLine(const fs::path& file, Decode decode, Sink sink) {
  std::ifstream in(file);
  if (!in) return;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      sink(decode(line));
    } catch (const LogError&) {
      throw;
    } catch (const std::exception& e) {
      throw LogError(file.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

template <typename Decode>
auto ReadLines(const fs::path& file, Decode decode) {
  std::vector<decltype(decode(std::string_view{}))> out;
  ForEachLine(file, decode, [&out](auto&& v) { out.push_back(std::move(v)); });
  return out;
}

// Cursor over the exact text EncodeEvent writes. Any mismatch returns false
// and the caller falls back to a full JSON parse.
class EventScanner {
 public:
  explicit EventScanner(std::string_view s) : s_(s) {}

  bool Literal(std::string_view lit) {
    if (s_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  bool Int(int64_t& out) {
    const char* begin = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), out);
    if (ec != std::errc() || ptr == begin) return false;
    pos_ += static_cast<size_t>(ptr - begin);
    return true;
  }

  bool Word(std::string_view& out) {
    if (!Literal("\"")) return false;
    const size_t end = s_.find('"', pos_);
    if (end == std::string_view::npos) return false;
    out = s_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return true;
  }

  bool Ids(std::vector<PointId>& out) {
    if (!Literal("[")) return false;
    if (Literal("]")) return true;
    do {
      int64_t v = 0;
      if (!Int(v) || v < 0 || v > 0xFFFFFFFF) return false;
      out.push_back(static_cast<PointId>(v));
    } while (Literal(","));
    return Literal("]");
  }

  bool AtEnd() const { return pos_ == s_.size(); }

 private:
  std::string_view s_;
  size_t pos_ = 0;
};

bool ScanEvent(std::string_view line, EventRecord& e) {
  EventScanner in(line);
  std::string_view result;
  if (!(in.Literal("{\"execIndex\":") && in.Int(e.exec_index) && in.Literal(",\"parentId\":") &&
        in.Int(e.parent_id) && in.Literal(",\"result\":") && in.Word(result) &&
        in.Literal(",\"newTotal\":") && in.Ids(e.new_total) && in.Literal(",\"newValid\":") &&
        in.Ids(e.new_valid) && in.Literal("}") && in.AtEnd())) {
    return false;
  }
  e.result = ParseResult(result);
  return true;
}

}  // namespace

std::string CorpusFileName(int64_t id, SaveReason reason) {
  return "id_" + std::to_string(id) + "_" + std::string(SaveReasonName(reason)) + ".bin";
}

std::string FailureFileName(const FailureKey& key, int64_t id) {
  return key.Hash() + "_id_" + std::to_string(id) + ".bin";
}

// Hand-formatted: this runs once per execution.
std::string EncodeEvent(const EventRecord& event) {
  std::string out = "{\"execIndex\":" + std::to_string(event.exec_index) +
                    ",\"parentId\":" + std::to_string(event.parent_id) + ",\"result\":\"" +
                    std::string(ResultName(event.result)) + "\",\"newTotal\":";
  AppendIds(out, event.new_total);
  out += ",\"newValid\":";
  AppendIds(out, event.new_valid);
  if (event.failure) {
    out += ",\"failureKey\":";
    out += KeyToJson(*event.failure).dump();
  }
  out += '}';
  return out;
}

EventRecord DecodeEvent(std::string_view line) {
  EventRecord e;
  if (ScanEvent(line, e)) return e;
  e = {};
  const json j = json::parse(line);
  e.exec_index = j.at("execIndex").get<int64_t>();
  e.parent_id = j.at("parentId").get<int64_t>();
  e.result = ParseResult(j.at("result").get<std::string>());
  e.new_total = j.at("newTotal").get<std::vector<PointId>>();
  e.new_valid = j.at("newValid").get<std::vector<PointId>>();
  if (j.contains("failureKey")) e.failure = KeyFromJson(j.at("failureKey"));
  return e;
}

std::string EncodeStats(const StatsRecord& s) {
  json j = {{"t", s.t},
            {"execs", s.execs},
            {"valid", s.valid},
            {"invalid", s.invalid},
            {"failures", s.failures},
            {"totalCov", s.total_cov},
            {"validCov", s.valid_cov},
            {"semCov", s.sem_cov},
            {"semRatio", s.sem_ratio},
            {"corpus", s.corpus},
            {"discarded", s.discarded}};
  return j.dump();
}

StatsRecord DecodeStats(std::string_view line) {
  const json j = json::parse(line);
  StatsRecord s;
  s.t = j.at("t").get<double>();
  s.execs = j.at("execs").get<uint64_t>();
  s.valid = j.at("valid").get<uint64_t>();
  s.invalid = j.at("invalid").get<uint64_t>();
  s.failures = j.at("failures").get<uint64_t>();
  s.total_cov = j.at("totalCov").get<size_t>();
  s.valid_cov = j.at("validCov").get<size_t>();
  s.sem_cov = j.at("semCov").get<size_t>();
  s.sem_ratio = j.at("semRatio").get<double>();
  s.corpus = j.value("corpus", size_t{0});
  s.discarded = j.value("discarded", uint64_t{0});
  return s;
}

ArtifactWriter::ArtifactWriter(const fs::path& dir, std::string fingerprint)
    : dir_(dir), fingerprint_(std::move(fingerprint)) {
  std::error_code ec;
  fs::create_directories(dir_ / "corpus", ec);
  fs::create_directories(dir_ / "failures", ec);
  if (ec) throw ConfigError("cannot create " + dir_.string() + ": " + ec.message());
  events_ = OpenOrThrow(dir_ / "events.jsonl");
  stats_ = OpenOrThrow(dir_ / "stats.jsonl");
  corpus_index_ = OpenOrThrow(dir_ / "corpus" / "index.jsonl");
  failure_index_ = OpenOrThrow(dir_ / "failures" / "index.jsonl");
}

ArtifactWriter::~ArtifactWriter() {
  for (std::FILE* f : {events_, stats_, corpus_index_, failure_index_}) {
    if (f != nullptr) std::fclose(f);
  }
}

void ArtifactWriter::Event(const EventRecord& event) { WriteLine(events_, EncodeEvent(event)); }

void ArtifactWriter::Stats(const StatsRecord& stats) {
  WriteLine(stats_, EncodeStats(stats));
  std::fflush(stats_);
}

void ArtifactWriter::Corpus(const CorpusEntry& entry) {
  const std::string file = CorpusFileName(entry.sequence.id, entry.reason);
  WriteBytes(dir_ / "corpus" / file, entry.sequence.bytes);
  json j = {{"id", entry.sequence.id},
            {"reason", SaveReasonName(entry.reason)},
            {"parentId", entry.parent_id},
            {"result", ResultName(entry.result)},
            {"coverage", entry.coverage.ids()},
            {"t", entry.t},
            {"fingerprint", fingerprint_},
            {"file", file}};
  WriteLine(corpus_index_, j.dump());
}

void ArtifactWriter::Failure(const FailureEntry& entry) {
  const std::string file = FailureFileName(entry.key, entry.sequence.id);
  WriteBytes(dir_ / "failures" / file, entry.sequence.bytes);
  {
    fs::path input = dir_ / "failures" / file;
    input.replace_extension(".input");
    std::ofstream(input, std::ios::binary) << entry.input;
  }
  json j = {{"id", entry.sequence.id},
            {"parentId", entry.parent_id},
            {"result", ResultName(Result::kFailure)},
            {"coverage", entry.coverage.ids()},
            {"t", entry.t},
            {"failureKey", KeyToJson(entry.key)},
            {"fingerprint", fingerprint_},
            {"file", file}};
  WriteLine(failure_index_, j.dump());
  std::fflush(failure_index_);
}

void ArtifactWriter::Summary(const CampaignResult& result) {
  std::fflush(events_);
  std::fflush(corpus_index_);
  json corpus = json::array();
  for (const CorpusEntry& e : result.corpus) {
    corpus.push_back({{"id", e.sequence.id}, {"reason", SaveReasonName(e.reason)}});
  }
  json failures = json::array();
  for (const FailureEntry& f : result.failures) {
    failures.push_back({{"id", f.sequence.id},
                        {"t", f.t},
                        {"failureKey", KeyToJson(f.key)},
                        {"hash", f.key.Hash()},
                        {"count", result.failure_counts.at(f.key)}});
  }
  json j = {{"engine", EngineName(result.engine)},
            {"fingerprint", result.generator_fingerprint},
            {"final", json::parse(EncodeStats(result.final_stats))},
            {"totalCoverage", result.total_coverage.ids()},
            {"validCoverage", result.valid_coverage.ids()},
            {"corpus", corpus},
            {"failures", failures}};
  std::ofstream(dir_ / "summary.json") << j.dump(2) << "\n";
}

std::vector<EventRecord> ReadEvents(const fs::path& file) { return ReadLines(file, DecodeEvent); }

void ForEachEvent(const fs::path& file, const std::function<void(const EventRecord&)>& visit) {
  ForEachLine(file, DecodeEvent, visit);
}

std::vector<StatsRecord> ReadStats(const fs::path& file) { return ReadLines(file, DecodeStats); }

std::vector<IndexRecord> ReadIndex(const fs::path& file) {
  return ReadLines(file, [](std::string_view line) {
    const json j = json::parse(line);
    IndexRecord r;
    r.id = j.at("id").get<int64_t>();
    if (j.contains("reason")) r.reason = ParseSaveReason(j.at("reason").get<std::string>());
    r.parent_id = j.at("parentId").get<int64_t>();
    r.result = ParseResult(j.at("result").get<std::string>());
    r.coverage = j.at("coverage").get<std::vector<PointId>>();
    r.t = j.at("t").get<double>();
    if (j.contains("failureKey")) r.failure = KeyFromJson(j.at("failureKey"));
    r.fingerprint = j.value("fingerprint", "");
    r.file = j.at("file").get<std::string>();
    return r;
  });
}

Bytes ReadBytes(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LogError("cannot read " + file.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteBytes(const fs::path& file, const Bytes& bytes) {
  std::ofstream out(file, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("cannot write " + file.string());
}

}  // namespace paramfuzz
