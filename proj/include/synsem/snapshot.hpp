#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "synsem/backend.hpp"

namespace synsem {

struct SnapshotMeta {
  std::string source;
  std::string created;
};

// Frozen keyword -> synsets table. Immutable once loaded; lookups are total
// and safe from any number of threads.
class SnapshotStore {
 public:
  SnapshotStore() = default;
  SnapshotStore(std::map<std::string, std::vector<Synset>> entries, SnapshotMeta meta);

  // Normalizes `keyword` first; unknown keywords map to an empty list.
  const std::vector<Synset>& lookup(std::string_view keyword) const;

  const std::map<std::string, std::vector<Synset>>& entries() const { return entries_; }
  const SnapshotMeta& meta() const { return meta_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<Synset>> entries_;
  SnapshotMeta meta_;
};

// Parsed snapshot plus every invariant violation found along the way.
struct SnapshotValidation {
  SnapshotStore store;
  std::vector<SynsetIssue> issues;
};

// Throws InputError for a missing file or a document that is not a JSON
// object; record-level problems are collected, not thrown.
SnapshotValidation validate_snapshot(const std::filesystem::path& path);

// Like validate_snapshot, but any invariant violation is an InputError naming
// the keyword and record position.
SnapshotStore load_snapshot(const std::filesystem::path& path);

std::string serialize_snapshot(const SnapshotStore& store);

class SnapshotBackend : public KnowledgeBackend {
 public:
  explicit SnapshotBackend(std::shared_ptr<const SnapshotStore> store) : store_(std::move(store)) {}

  std::vector<Synset> lookup(const std::string& keyword) override { return store_->lookup(keyword); }
  std::string tag() const override { return "snapshot"; }

  const SnapshotStore& store() const { return *store_; }

 private:
  std::shared_ptr<const SnapshotStore> store_;
};

}  // namespace synsem
