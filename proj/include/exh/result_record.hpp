#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "exh/errors.hpp"

namespace exh {

/// One line of the JSONL results store. series/bound arrays carry all n+1
/// coefficients including trailing zeros so the degree alignment is
/// unambiguous.
struct ResultRecord {
  std::string timestamp;  // UTC ISO-8601
  std::string command;
  int n = 0;
  int d = 0;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> series;
  std::vector<std::int64_t> bound;
  std::string verdict;
  std::int64_t runtime_ms = 0;
};

inline void to_json(nlohmann::json& j, const ResultRecord& r) {
  j = nlohmann::json{{"timestamp", r.timestamp}, {"command", r.command}, {"n", r.n},
                     {"d", r.d},                 {"prime", r.prime},     {"seed", r.seed},
                     {"series", r.series},       {"bound", r.bound},     {"verdict", r.verdict},
                     {"runtime_ms", r.runtime_ms}};
}

inline void from_json(const nlohmann::json& j, ResultRecord& r) {
  j.at("timestamp").get_to(r.timestamp);
  j.at("command").get_to(r.command);
  j.at("n").get_to(r.n);
  j.at("d").get_to(r.d);
  j.at("prime").get_to(r.prime);
  j.at("seed").get_to(r.seed);
  j.at("series").get_to(r.series);
  j.at("bound").get_to(r.bound);
  j.at("verdict").get_to(r.verdict);
  j.at("runtime_ms").get_to(r.runtime_ms);
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Append-only JSONL store with single-writer serialization.
class ResultStore {
 public:
  explicit ResultStore(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }

  void append(const ResultRecord& record) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot open results store " + path_.string());
    out << nlohmann::json(record).dump() << '\n';
    if (!out) throw IoError("write to results store failed: " + path_.string());
  }

  static std::vector<ResultRecord> read_all(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open results store " + path.string());
    std::vector<ResultRecord> records;
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      records.push_back(nlohmann::json::parse(line).get<ResultRecord>());
    }
    return records;
  }

 private:
  std::filesystem::path path_;
  std::mutex mutex_;
};

}  // namespace exh
