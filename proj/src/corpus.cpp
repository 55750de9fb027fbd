#include "synsem/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "synsem/atomic_file.hpp"
#include "synsem/errors.hpp"
#include "synsem/text.hpp"

namespace fs = std::filesystem;

namespace synsem {
namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

const nlohmann::json& require(const nlohmann::json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw InputError(std::string("missing field '") + field + "'");
  return *it;
}

std::string require_string(const nlohmann::json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_string()) throw InputError(std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const nlohmann::json& v, const char* field) {
  if (!v.is_array()) throw InputError(std::string("field '") + field + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw InputError(std::string("field '") + field + "' must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  if (!fs::exists(path)) throw InputError("file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
      fn(doc, number);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(number) + ": malformed record: " + e.what());
    } catch (const InputError& e) {
      throw InputError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

}  // namespace

nlohmann::json to_json(const ArticleRecord& article) {
  nlohmann::json j{{"id", article.id}, {"title", article.title}, {"keywords", article.keywords}};
  if (article.journal) j["journal"] = *article.journal;
  return j;
}

ArticleRecord article_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("record is not an object");
  ArticleRecord a;
  a.id = require_string(j, "id");
  if (a.id.empty()) throw InputError("field 'id' is empty");
  a.title = require_string(j, "title");
  if (auto it = j.find("journal"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw InputError("field 'journal' must be a string");
    a.journal = it->get<std::string>();
  }
  if (auto it = j.find("keywords"); it != j.end() && !it->is_null()) a.keywords = string_list(*it, "keywords");
  return a;
}

std::vector<ArticleRecord> ingest(const fs::path& path) {
  std::vector<ArticleRecord> records;
  std::map<std::string, std::size_t> first_line;
  for_each_line(path, [&](const nlohmann::json& doc, std::size_t line) {
    auto record = article_from_json(doc);
    auto [it, inserted] = first_line.emplace(record.id, line);
    if (!inserted) {
      throw InputError("duplicate id '" + record.id + "' on lines " + std::to_string(it->second) + " and " +
                       std::to_string(line));
    }
    records.push_back(std::move(record));
  });
  return records;
}

ProfileRecord to_record(const KeywordProfile& profile) {
  ProfileRecord r;
  r.keyword = profile.keyword;
  r.source = profile.source;
  r.supported_categories = profile.supported_categories.labels();
  for (const auto& s : profile.synsets) r.synset_ids.push_back(s.id);
  return r;
}

nlohmann::json to_json(const EnrichedArticle& record) {
  auto assignments = nlohmann::json::array();
  for (const auto& a : record.assignments) {
    assignments.push_back({{"category", a.category},
                           {"supporting_keywords", a.supporting_keywords},
                           {"support", a.support},
                           {"tier", std::string(to_string(a.tier))}});
  }
  auto profiles = nlohmann::json::array();
  for (const auto& p : record.profiles) {
    profiles.push_back({{"keyword", p.keyword},
                        {"source", std::string(to_string(p.source))},
                        {"supported_categories", p.supported_categories},
                        {"synset_ids", p.synset_ids}});
  }
  return nlohmann::json{{"article", to_json(record.article)},
                        {"assignments", std::move(assignments)},
                        {"profiles", std::move(profiles)},
                        {"config_fingerprint", record.config_fingerprint},
                        {"enriched_at", record.enriched_at}};
}

EnrichedArticle enriched_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("record is not an object");
  EnrichedArticle r;
  r.article = article_from_json(require(j, "article"));
  const auto& assignments = require(j, "assignments");
  if (!assignments.is_array()) throw InputError("field 'assignments' must be an array");
  for (const auto& a : assignments) {
    if (!a.is_object()) throw InputError("assignment is not an object");
    CategoryAssignment ca;
    ca.category = require_string(a, "category");
    ca.supporting_keywords = string_list(require(a, "supporting_keywords"), "supporting_keywords");
    const auto& support = require(a, "support");
    if (!support.is_number_integer()) throw InputError("field 'support' must be an integer");
    ca.support = support.get<int>();
    ca.tier = tier_from_string(require_string(a, "tier"));
    r.assignments.push_back(std::move(ca));
  }
  const auto& profiles = require(j, "profiles");
  if (!profiles.is_array()) throw InputError("field 'profiles' must be an array");
  for (const auto& p : profiles) {
    if (!p.is_object()) throw InputError("profile is not an object");
    ProfileRecord pr;
    pr.keyword = require_string(p, "keyword");
    pr.source = profile_source_from_string(require_string(p, "source"));
    pr.supported_categories = string_list(require(p, "supported_categories"), "supported_categories");
    pr.synset_ids = string_list(require(p, "synset_ids"), "synset_ids");
    r.profiles.push_back(std::move(pr));
  }
  r.config_fingerprint = require_string(j, "config_fingerprint");
  r.enriched_at = require_string(j, "enriched_at");
  return r;
}

std::vector<std::string> check_enriched(const EnrichedArticle& record) {
  std::vector<std::string> issues;
  const std::string where = "article '" + record.article.id + "'";
  if (record.article.id.empty()) issues.push_back("article with empty id");
  if (record.config_fingerprint.empty()) issues.push_back(where + ": empty config_fingerprint");

  std::set<std::string> keywords;
  for (const auto& raw : record.article.keywords) {
    if (auto kw = normalize_keyword(raw); !kw.empty()) keywords.insert(std::move(kw));
  }
  for (const auto& a : record.assignments) {
    const std::string at = where + ", category '" + a.category + "'";
    if (a.category.empty()) issues.push_back(where + ": assignment with empty category");
    std::set<std::string> distinct(a.supporting_keywords.begin(), a.supporting_keywords.end());
    if (distinct.size() != a.supporting_keywords.size()) issues.push_back(at + ": repeated supporting keyword");
    if (a.support != static_cast<int>(a.supporting_keywords.size())) {
      issues.push_back(at + ": support " + std::to_string(a.support) + " does not match " +
                       std::to_string(a.supporting_keywords.size()) + " supporting keywords");
    }
    if (a.support < 2) issues.push_back(at + ": support below 2");
    if (a.tier != tier_for(a.support)) issues.push_back(at + ": tier does not match support");
    for (const auto& kw : a.supporting_keywords) {
      if (!keywords.count(kw)) issues.push_back(at + ": supporting keyword '" + kw + "' is not an article keyword");
    }
  }
  for (const auto& p : record.profiles) {
    if (!keywords.count(p.keyword)) issues.push_back(where + ": profile keyword '" + p.keyword + "' is not an article keyword");
  }
  return issues;
}

std::string serialize_enriched(std::span<const EnrichedArticle> records) {
  std::set<std::string> ids;
  std::ostringstream out;
  for (const auto& record : records) {
    if (auto issues = check_enriched(record); !issues.empty()) {
      throw InvariantError("refusing to write enriched corpus: " + issues.front());
    }
    if (!ids.insert(record.article.id).second) {
      throw InvariantError("refusing to write enriched corpus: duplicate article id '" + record.article.id + "'");
    }
    out << to_json(record).dump() << '\n';
  }
  return out.str();
}

void persist_enriched(std::span<const EnrichedArticle> records, const fs::path& path) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (!fs::is_directory(dir)) throw InputError("output directory does not exist: " + dir.string());
  write_file_atomic(path, serialize_enriched(records));
}

std::vector<EnrichedArticle> load_enriched(const fs::path& path) {
  std::vector<EnrichedArticle> records;
  for_each_line(path, [&](const nlohmann::json& doc, std::size_t) { records.push_back(enriched_from_json(doc)); });
  return records;
}

EnrichedCorpus::EnrichedCorpus(std::vector<EnrichedArticle> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!by_id_.emplace(r.article.id, i).second) {
      throw InputError("duplicate article id '" + r.article.id + "' in enriched corpus");
    }
    if (i == 0) {
      fingerprint_ = r.config_fingerprint;
    } else if (r.config_fingerprint != fingerprint_) {
      throw InputError("enriched corpus mixes configurations (article '" + r.article.id + "' has fingerprint " +
                       r.config_fingerprint + ", expected " + fingerprint_ + ")");
    }
    for (const auto& a : r.assignments) by_category_[case_fold(a.category)].push_back({r.article.id, a.support});
  }
  for (auto& [key, hits] : by_category_) {
    std::sort(hits.begin(), hits.end(), [](const CategoryHit& a, const CategoryHit& b) {
      if (a.support != b.support) return a.support > b.support;
      return a.article_id < b.article_id;
    });
  }
}

const EnrichedArticle* EnrichedCorpus::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

std::vector<CategoryHit> EnrichedCorpus::query(std::string_view category) const {
  auto it = by_category_.find(case_fold(category));
  return it == by_category_.end() ? std::vector<CategoryHit>{} : it->second;
}

std::vector<std::string> query_by_category(std::string_view category, const EnrichedCorpus& corpus) {
  std::vector<std::string> ids;
  for (const auto& hit : corpus.query(category)) ids.push_back(hit.article_id);
  return ids;
}

CorpusStats corpus_stats(const EnrichedCorpus& corpus) {
  CorpusStats stats;
  std::set<std::string> categories;
  for (const auto& r : corpus.records()) {
    ++stats.total_articles;
    if (!r.assignments.empty()) ++stats.covered_articles;
    ++stats.assignment_histogram[r.assignments.size()];
    for (const auto& a : r.assignments) categories.insert(case_fold(a.category));
  }
  stats.empty = stats.total_articles == 0;
  stats.coverage = stats.empty ? 0.0
                               : static_cast<double>(stats.covered_articles) / static_cast<double>(stats.total_articles);
  stats.distinct_categories = categories.size();
  return stats;
}

}  // namespace synsem
