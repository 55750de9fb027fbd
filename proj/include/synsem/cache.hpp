#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "synsem/backend.hpp"

namespace synsem {

struct CacheEntry {
  std::string keyword;
  std::vector<Synset> synsets;
  std::string fetched_at;
  std::string backend_tag;

  bool operator==(const CacheEntry&) const = default;
};

// Directory of per-keyword JSON records named by the SHA-256 of the
// normalized keyword. Writes are atomic renames, so concurrent writers of the
// same key resolve as last-write-wins and readers never see torn files.
class SynsetCache {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  explicit SynsetCache(std::filesystem::path dir, Clock clock = {});

  struct ReadResult {
    std::optional<CacheEntry> entry;
    std::optional<std::string> warning;  // set when a corrupt record was found
  };

  ReadResult read(const std::string& keyword) const;
  void write(const CacheEntry& entry);
  void clear();

  // All readable entries, sorted by keyword. Corrupt records are skipped and
  // reported through `warnings` when given.
  std::vector<CacheEntry> entries(std::vector<std::string>* warnings = nullptr) const;

  std::filesystem::path path_for(const std::string& keyword) const;
  const std::filesystem::path& dir() const { return dir_; }
  std::chrono::system_clock::time_point now() const { return clock_(); }

 private:
  std::filesystem::path dir_;
  Clock clock_;
};

struct CachedFetch {
  std::vector<Synset> synsets;
  bool hit = false;
  std::optional<std::string> warning;
};

// Cache-first fetch. Empty answers are cached too; they expire only when the
// backend declares a negative_ttl. Corrupt records count as misses and are
// overwritten.
CachedFetch cached_fetch(const std::string& keyword, KnowledgeBackend& backend, SynsetCache& cache);

// Decorator that routes every lookup through cached_fetch.
class CachingBackend : public KnowledgeBackend {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  CachingBackend(KnowledgeBackend& inner, SynsetCache& cache, WarningSink warn = {})
      : inner_(inner), cache_(cache), warn_(std::move(warn)) {}

  std::vector<Synset> lookup(const std::string& keyword) override;
  std::string tag() const override { return inner_.tag(); }
  std::optional<std::chrono::seconds> negative_ttl() const override { return inner_.negative_ttl(); }

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }

 private:
  KnowledgeBackend& inner_;
  SynsetCache& cache_;
  WarningSink warn_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace synsem
