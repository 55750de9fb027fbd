#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "synsem/inference.hpp"

namespace synsem {

struct ArticleRecord {
  std::string id;
  std::string title;
  std::optional<std::string> journal;
  std::vector<std::string> keywords;  // raw, as ingested

  // Records without keywords are kept but never sent through inference.
  bool inferable() const { return !keywords.empty(); }

  bool operator==(const ArticleRecord&) const = default;
};

nlohmann::json to_json(const ArticleRecord& article);
ArticleRecord article_from_json(const nlohmann::json& j);

// Reads one JSON object per line: {id, title, journal?, keywords?}. Blank
// lines are skipped. Malformed lines and duplicate ids raise InputError with
// line numbers.
std::vector<ArticleRecord> ingest(const std::filesystem::path& path);

// Persisted view of a KeywordProfile: synset ids only.
struct ProfileRecord {
  std::string keyword;
  ProfileSource source = ProfileSource::direct;
  std::vector<std::string> supported_categories;
  std::vector<std::string> synset_ids;

  bool operator==(const ProfileRecord&) const = default;
};

ProfileRecord to_record(const KeywordProfile& profile);

struct EnrichedArticle {
  ArticleRecord article;
  std::vector<CategoryAssignment> assignments;
  std::vector<ProfileRecord> profiles;
  std::string config_fingerprint;
  std::string enriched_at;

  bool operator==(const EnrichedArticle&) const = default;
};

nlohmann::json to_json(const EnrichedArticle& record);
EnrichedArticle enriched_from_json(const nlohmann::json& j);

// Invariant violations: support/tier/keyword consistency, fingerprint present.
std::vector<std::string> check_enriched(const EnrichedArticle& record);

// One compact JSON object per line. Throws InvariantError (writing nothing)
// if any record is invalid or ids repeat.
std::string serialize_enriched(std::span<const EnrichedArticle> records);

// Atomic: the target is either untouched or fully replaced.
void persist_enriched(std::span<const EnrichedArticle> records, const std::filesystem::path& path);

std::vector<EnrichedArticle> load_enriched(const std::filesystem::path& path);

struct CategoryHit {
  std::string article_id;
  int support = 0;
};

// Loaded, immutable enriched corpus with a category index. All records must
// share one config fingerprint.
class EnrichedCorpus {
 public:
  explicit EnrichedCorpus(std::vector<EnrichedArticle> records);

  static EnrichedCorpus load(const std::filesystem::path& path) { return EnrichedCorpus(load_enriched(path)); }

  const std::vector<EnrichedArticle>& records() const { return records_; }
  const EnrichedArticle* find(const std::string& id) const;

  // Empty when the corpus is empty or the fingerprint is shared by no record.
  const std::string& config_fingerprint() const { return fingerprint_; }

  // Sorted by support descending, then id ascending. Case-insensitive.
  std::vector<CategoryHit> query(std::string_view category) const;

 private:
  std::vector<EnrichedArticle> records_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::string, std::vector<CategoryHit>> by_category_;
  std::string fingerprint_;
};

std::vector<std::string> query_by_category(std::string_view category, const EnrichedCorpus& corpus);

struct CorpusStats {
  std::size_t total_articles = 0;
  std::size_t covered_articles = 0;
  double coverage = 0.0;
  bool empty = true;
  std::map<std::size_t, std::size_t> assignment_histogram;  // assignments per article -> articles
  std::size_t distinct_categories = 0;
};

CorpusStats corpus_stats(const EnrichedCorpus& corpus);

}  // namespace synsem
