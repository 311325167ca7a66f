#pragma once

// MemoStore: a persistent map from canonical lag tuples to exact rational
// correlation values, shared by the pair and n-point recursions.
//
// Concurrency contract: concurrent readers plus atomic idempotent insertion
// of single entries (duplicate computation of the same key is permitted and
// yields identical values).
//
// On-disk format (text, line oriented):
//   tmcorr-cache v1
//   n;lag,lag,...;num/den
// where n is the correlation order (number of sites, = 1 + number of lags),
// lags are the canonical sorted lags (empty for n = 1), and num/den is the
// reduced exact value.  Saves are atomic: temp file + rename.

#include "tmcorr/rational.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace tmcorr {

using LagKey = std::vector<std::uint64_t>;  // canonical: sorted, min-translated

struct LagKeyHash {
  std::size_t operator()(const LagKey& key) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
    for (std::uint64_t v : key) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class MemoStore {
 public:
  static constexpr const char* kHeader = "tmcorr-cache v1";

  std::optional<Rat> get(const LagKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  // Idempotent insert: first value wins; concurrent identical inserts are fine.
  void insert(const LagKey& key, const Rat& value) {
    std::unique_lock lock(mutex_);
    map_.emplace(key, value);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

  // Snapshot of all entries (sorted by key for deterministic output).
  std::vector<std::pair<LagKey, Rat>> snapshot() const {
    std::vector<std::pair<LagKey, Rat>> out;
    {
      std::shared_lock lock(mutex_);
      out.assign(map_.begin(), map_.end());
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  // Atomic save: write to a temp file in the same directory, then rename.
  void save(const std::string& path) const {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp." +
                          std::to_string(static_cast<unsigned long>(::getpid())));
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot open temp cache file " + tmp.string());
      out << kHeader << "\n";
      for (const auto& [key, value] : snapshot()) {
        out << (key.size() + 1) << ";";
        for (std::size_t i = 0; i < key.size(); ++i) {
          if (i) out << ",";
          out << key[i];
        }
        out << ";" << rat_to_string(value) << "\n";
      }
      if (!out.good()) throw std::runtime_error("write failure on " + tmp.string());
    }
    fs::rename(tmp, target);
  }

  // Load entries from `path` into this store (validating the header).
  // Returns the number of records read.
  std::size_t load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cache file " + path);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
      throw std::runtime_error("bad cache header in " + path);
    std::size_t count = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto p1 = line.find(';');
      auto p2 = line.find(';', p1 == std::string::npos ? 0 : p1 + 1);
      if (p1 == std::string::npos || p2 == std::string::npos)
        throw std::runtime_error("malformed cache line: " + line);
      unsigned long order = std::stoul(line.substr(0, p1));
      LagKey key;
      std::string lags = line.substr(p1 + 1, p2 - p1 - 1);
      if (!lags.empty()) {
        std::stringstream ss(lags);
        std::string tok;
        while (std::getline(ss, tok, ',')) key.push_back(std::stoull(tok));
      }
      if (order != key.size() + 1)
        throw std::runtime_error("order/lag mismatch in cache line: " + line);
      Rat value = parse_rational(line.substr(p2 + 1));
      insert(key, value);
      ++count;
    }
    return count;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<LagKey, Rat, LagKeyHash> map_;
};

// Process-wide store shared by the recursion evaluators.
inline MemoStore& global_memo() {
  static MemoStore store;
  return store;
}

}  // namespace tmcorr
