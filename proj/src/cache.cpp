#include "synsem/cache.hpp"

#include <algorithm>

#include "synsem/atomic_file.hpp"
#include "synsem/errors.hpp"
#include "synsem/hash.hpp"
#include "synsem/timestamp.hpp"

namespace fs = std::filesystem;

namespace synsem {
namespace {

constexpr std::string_view kExtension = ".json";

CacheEntry parse_entry(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw DecodeError("record is not an object");
  for (const char* field : {"keyword", "fetched_at", "backend_tag"}) {
    if (!doc.contains(field) || !doc[field].is_string()) {
      throw DecodeError(std::string("missing or non-string field '") + field + "'");
    }
  }
  CacheEntry entry;
  entry.keyword = doc["keyword"].get<std::string>();
  entry.fetched_at = doc["fetched_at"].get<std::string>();
  entry.backend_tag = doc["backend_tag"].get<std::string>();
  if (!doc.contains("synsets")) throw DecodeError("missing field 'synsets'");
  entry.synsets = synsets_from_json(doc["synsets"], entry.keyword);
  if (auto issues = check_synsets(entry.keyword, entry.synsets); !issues.empty()) {
    throw DecodeError(issues.front().describe());
  }
  return entry;
}

}  // namespace

SynsetCache::SynsetCache(fs::path dir, Clock clock) : dir_(std::move(dir)), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return std::chrono::system_clock::now(); };
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw InputError("cannot open cache directory '" + dir_.string() + "': " + ec.message());
  }
}

fs::path SynsetCache::path_for(const std::string& keyword) const {
  return dir_ / (sha256_hex(keyword) + std::string(kExtension));
}

SynsetCache::ReadResult SynsetCache::read(const std::string& keyword) const {
  const fs::path path = path_for(keyword);
  std::error_code ec;
  if (!fs::exists(path, ec)) return {};
  try {
    CacheEntry entry = parse_entry(read_file(path));
    if (entry.keyword != keyword) {
      return {std::nullopt, "cache record " + path.filename().string() + " belongs to keyword '" + entry.keyword +
                                "', not '" + keyword + "'; ignoring it"};
    }
    return {std::move(entry), std::nullopt};
  } catch (const std::exception& e) {
    return {std::nullopt, "corrupt cache record " + path.filename().string() + " for '" + keyword +
                              "' (" + e.what() + "); refetching"};
  }
}

void SynsetCache::write(const CacheEntry& entry) {
  nlohmann::json doc{{"keyword", entry.keyword},
                     {"synsets", synsets_to_json(entry.synsets)},
                     {"fetched_at", entry.fetched_at},
                     {"backend_tag", entry.backend_tag}};
  write_file_atomic(path_for(entry.keyword), doc.dump(2) + "\n");
}

void SynsetCache::clear() {
  for (const auto& item : fs::directory_iterator(dir_)) {
    if (item.is_regular_file() && item.path().extension() == kExtension) fs::remove(item.path());
  }
}

std::vector<CacheEntry> SynsetCache::entries(std::vector<std::string>* warnings) const {
  std::vector<CacheEntry> out;
  for (const auto& item : fs::directory_iterator(dir_)) {
    if (!item.is_regular_file() || item.path().extension() != kExtension) continue;
    try {
      CacheEntry entry = parse_entry(read_file(item.path()));
      if (path_for(entry.keyword) != item.path()) throw DecodeError("file name does not match keyword hash");
      out.push_back(std::move(entry));
    } catch (const std::exception& e) {
      if (warnings) warnings->push_back("skipping cache record " + item.path().filename().string() + ": " + e.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.keyword < b.keyword; });
  return out;
}

CachedFetch cached_fetch(const std::string& keyword, KnowledgeBackend& backend, SynsetCache& cache) {
  CachedFetch result;
  auto cached = cache.read(keyword);
  result.warning = std::move(cached.warning);
  if (cached.entry) {
    bool expired = false;
    if (cached.entry->synsets.empty()) {
      if (auto ttl = backend.negative_ttl()) {
        auto fetched = from_iso8601(cached.entry->fetched_at);
        expired = !fetched || cache.now() - *fetched > *ttl;
      }
    }
    if (!expired) {
      result.synsets = std::move(cached.entry->synsets);
      result.hit = true;
      return result;
    }
  }
  result.synsets = fetch_synsets(keyword, backend);
  cache.write(CacheEntry{keyword, result.synsets, to_iso8601(cache.now()), backend.tag()});
  return result;
}

std::vector<Synset> CachingBackend::lookup(const std::string& keyword) {
  auto fetched = cached_fetch(keyword, inner_, cache_);
  (fetched.hit ? hits_ : misses_).fetch_add(1);
  if (fetched.warning && warn_) warn_(*fetched.warning);
  return std::move(fetched.synsets);
}

}  // namespace synsem
