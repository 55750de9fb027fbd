#include "synsem/snapshot.hpp"

#include "synsem/atomic_file.hpp"
#include "synsem/errors.hpp"
#include "synsem/text.hpp"

namespace synsem {
namespace {

constexpr std::string_view kMetaKey = "_meta";

SnapshotMeta parse_meta(const nlohmann::json& j, std::vector<SynsetIssue>& issues) {
  SnapshotMeta meta;
  if (!j.is_object()) {
    issues.push_back({std::string(kMetaKey), 0, "'_meta' is not an object"});
    return meta;
  }
  for (const char* field : {"source", "created"}) {
    auto it = j.find(field);
    if (it == j.end()) continue;
    if (!it->is_string()) {
      issues.push_back({std::string(kMetaKey), 0, std::string("'_meta.") + field + "' is not a string"});
      continue;
    }
    (std::string_view(field) == "source" ? meta.source : meta.created) = it->get<std::string>();
  }
  return meta;
}

}  // namespace

SnapshotStore::SnapshotStore(std::map<std::string, std::vector<Synset>> entries, SnapshotMeta meta)
    : entries_(std::move(entries)), meta_(std::move(meta)) {}

const std::vector<Synset>& SnapshotStore::lookup(std::string_view keyword) const {
  static const std::vector<Synset> kEmpty;
  auto it = entries_.find(normalize_keyword(keyword));
  return it == entries_.end() ? kEmpty : it->second;
}

SnapshotValidation validate_snapshot(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("snapshot file not found: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed snapshot '" + path.string() + "': " + e.what());
  }
  if (!doc.is_object()) throw InputError("malformed snapshot '" + path.string() + "': top level is not an object");

  std::vector<SynsetIssue> issues;
  std::map<std::string, std::vector<Synset>> entries;
  SnapshotMeta meta;
  for (const auto& [key, value] : doc.items()) {
    if (key == kMetaKey) {
      meta = parse_meta(value, issues);
      continue;
    }
    if (!is_normalized(key)) {
      issues.push_back({key, 0, "keyword is not in normalized form (expected '" + normalize_keyword(key) + "')"});
      continue;
    }
    if (!value.is_array()) {
      issues.push_back({key, 0, "entry is not an array of synsets"});
      continue;
    }
    std::vector<Synset> synsets;
    for (std::size_t i = 0; i < value.size(); ++i) {
      try {
        synsets.push_back(synset_from_json(value[i], key));
      } catch (const DecodeError& e) {
        issues.push_back({key, i, e.what()});
        synsets.push_back(Synset{"<malformed-" + std::to_string(i) + ">", key, {}, {}, {}});
      }
    }
    auto found = check_synsets(key, synsets);
    issues.insert(issues.end(), found.begin(), found.end());
    entries.emplace(key, std::move(synsets));
  }
  return {SnapshotStore(std::move(entries), std::move(meta)), std::move(issues)};
}

SnapshotStore load_snapshot(const std::filesystem::path& path) {
  auto result = validate_snapshot(path);
  if (!result.issues.empty()) {
    std::string msg = "invalid snapshot '" + path.string() + "': " + result.issues.front().describe();
    if (result.issues.size() > 1) msg += " (and " + std::to_string(result.issues.size() - 1) + " more)";
    throw InputError(msg);
  }
  return std::move(result.store);
}

std::string serialize_snapshot(const SnapshotStore& store) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [keyword, synsets] : store.entries()) doc[keyword] = synsets_to_json(synsets);
  doc[std::string(kMetaKey)] = {{"source", store.meta().source}, {"created", store.meta().created}};
  return doc.dump(2) + "\n";
}

}  // namespace synsem
