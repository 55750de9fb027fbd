#pragma once

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synsem/backend.hpp"
#include "synsem/category_set.hpp"
#include "synsem/noise.hpp"

namespace synsem {

enum class ProfileSource { direct, composed_fallback };

std::string_view to_string(ProfileSource source);
ProfileSource profile_source_from_string(std::string_view s);

// One article keyword with the synsets retrieved for it and the categories
// it lends support to.
struct KeywordProfile {
  std::string keyword;
  std::vector<Synset> synsets;
  CategorySet supported_categories;
  ProfileSource source = ProfileSource::direct;
};

struct InferenceConfig {
  int min_support = 2;
  NoisePolicy noise;
  bool composed_fallback = true;
  std::string language = "EN";

  bool operator==(const InferenceConfig&) const = default;
};

// Accepts the keys min_support, noise.enabled, noise.patterns,
// composed_fallback and language; all optional. Unknown keys and bad values
// are InputErrors.
InferenceConfig inference_config_from_json(const nlohmann::json& doc);

// Canonical form: every key present, language upper-cased.
nlohmann::json to_json(const InferenceConfig& config);

// Stable SHA-256 over the canonical serialization.
std::string config_fingerprint(const InferenceConfig& config);

enum class Tier { standard, high };

std::string_view to_string(Tier tier);
Tier tier_from_string(std::string_view s);
constexpr Tier tier_for(int support) { return support >= 3 ? Tier::high : Tier::standard; }

struct CategoryAssignment {
  std::string category;
  std::vector<std::string> supporting_keywords;  // sorted, distinct
  int support = 0;
  Tier tier = Tier::standard;

  bool operator==(const CategoryAssignment&) const = default;
};

KeywordProfile build_profile(const std::string& keyword, std::vector<Synset> synsets, const NoisePolicy& noise);

// Support of a category = number of distinct profiles whose supported set
// contains it. Emits categories with support >= config.min_support, sorted by
// support descending then case-folded label. Labels keep the spelling found
// in the profile with the smallest keyword, so the output does not depend on
// profile order. Duplicate keywords are a ContractError.
std::vector<CategoryAssignment> connect_categories(std::span<const KeywordProfile> profiles,
                                                   const InferenceConfig& config);

// Synsets of `profile` whose categories intersect `winning`, in order.
std::vector<Synset> disambiguate_synsets(const KeywordProfile& profile, const CategorySet& winning);

CategorySet winning_categories(std::span<const CategoryAssignment> assignments);

struct ArticleInference {
  std::vector<CategoryAssignment> assignments;
  std::vector<KeywordProfile> profiles;
};

// Full per-article pipeline: normalize and deduplicate keywords, fetch,
// profile, fall back to token splitting for keywords with no synsets, connect.
ArticleInference infer_article(std::span<const std::string> keywords, KnowledgeBackend& backend,
                               const InferenceConfig& config);

}  // namespace synsem
