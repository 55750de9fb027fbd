#include "synsem/inference.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "synsem/composed.hpp"
#include "synsem/errors.hpp"
#include "synsem/hash.hpp"
#include "synsem/text.hpp"

namespace synsem {

std::string_view to_string(ProfileSource source) {
  return source == ProfileSource::direct ? "direct" : "composed-fallback";
}

ProfileSource profile_source_from_string(std::string_view s) {
  if (s == "direct") return ProfileSource::direct;
  if (s == "composed-fallback") return ProfileSource::composed_fallback;
  throw InputError("unknown profile source '" + std::string(s) + "'");
}

std::string_view to_string(Tier tier) { return tier == Tier::high ? "high" : "standard"; }

Tier tier_from_string(std::string_view s) {
  if (s == "high") return Tier::high;
  if (s == "standard") return Tier::standard;
  throw InputError("unknown tier '" + std::string(s) + "'");
}

InferenceConfig inference_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("configuration must be an object");
  InferenceConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "min_support") {
      if (!value.is_number_integer() || value.get<long long>() < 2) {
        throw InputError("'min_support' must be an integer >= 2");
      }
      config.min_support = value.get<int>();
    } else if (key == "composed_fallback") {
      if (!value.is_boolean()) throw InputError("'composed_fallback' must be a boolean");
      config.composed_fallback = value.get<bool>();
    } else if (key == "language") {
      if (!value.is_string() || value.get<std::string>().empty()) {
        throw InputError("'language' must be a non-empty string");
      }
      config.language = value.get<std::string>();
    } else if (key == "noise") {
      if (!value.is_object()) throw InputError("'noise' must be an object");
      for (const auto& [nkey, nvalue] : value.items()) {
        if (nkey == "enabled") {
          if (!nvalue.is_boolean()) throw InputError("'noise.enabled' must be a boolean");
          config.noise.enabled = nvalue.get<bool>();
        } else if (nkey == "patterns") {
          if (!nvalue.is_array()) throw InputError("'noise.patterns' must be an array of strings");
          config.noise.patterns.clear();
          for (const auto& p : nvalue) {
            if (!p.is_string()) throw InputError("'noise.patterns' must be an array of strings");
            config.noise.patterns.push_back(p.get<std::string>());
          }
        } else {
          throw InputError("unknown configuration key 'noise." + nkey + "'");
        }
      }
    } else {
      throw InputError("unknown configuration key '" + key + "'");
    }
  }
  std::transform(config.language.begin(), config.language.end(), config.language.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return config;
}

nlohmann::json to_json(const InferenceConfig& config) {
  return nlohmann::json{{"min_support", config.min_support},
                        {"noise", {{"enabled", config.noise.enabled}, {"patterns", config.noise.patterns}}},
                        {"composed_fallback", config.composed_fallback},
                        {"language", config.language}};
}

std::string config_fingerprint(const InferenceConfig& config) { return sha256_hex(to_json(config).dump()); }

KeywordProfile build_profile(const std::string& keyword, std::vector<Synset> synsets, const NoisePolicy& noise) {
  KeywordProfile profile;
  profile.keyword = keyword;
  for (const auto& synset : synsets) {
    for (const auto& category : synset.categories) {
      if (!is_noise(category, noise)) profile.supported_categories.insert(category);
    }
  }
  profile.synsets = std::move(synsets);
  return profile;
}

std::vector<CategoryAssignment> connect_categories(std::span<const KeywordProfile> profiles,
                                                   const InferenceConfig& config) {
  if (config.min_support < 2) throw ContractError("min_support must be at least 2");

  std::vector<std::size_t> order(profiles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return profiles[a].keyword < profiles[b].keyword; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (profiles[order[i]].keyword == profiles[order[i - 1]].keyword) {
      throw ContractError("duplicate keyword '" + profiles[order[i]].keyword + "' among article profiles");
    }
  }

  struct Tally {
    std::string display;
    std::vector<std::string> keywords;
  };
  std::map<std::string, Tally> tallies;  // folded label -> tally
  for (std::size_t idx : order) {
    const auto& profile = profiles[idx];
    for (const auto& [key, display] : profile.supported_categories) {
      auto [it, inserted] = tallies.try_emplace(key, Tally{display, {}});
      it->second.keywords.push_back(profile.keyword);  // keywords arrive sorted and distinct
    }
  }

  std::vector<std::pair<std::string, CategoryAssignment>> kept;
  for (auto& [key, tally] : tallies) {
    const int support = static_cast<int>(tally.keywords.size());
    if (support < config.min_support) continue;
    kept.emplace_back(key, CategoryAssignment{std::move(tally.display), std::move(tally.keywords), support,
                                              tier_for(support)});
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second.support != b.second.support) return a.second.support > b.second.support;
    return a.first < b.first;
  });

  std::vector<CategoryAssignment> out;
  out.reserve(kept.size());
  for (auto& [key, assignment] : kept) out.push_back(std::move(assignment));
  return out;
}

std::vector<Synset> disambiguate_synsets(const KeywordProfile& profile, const CategorySet& winning) {
  std::vector<Synset> out;
  for (const auto& synset : profile.synsets) {
    const bool match = std::any_of(synset.categories.begin(), synset.categories.end(),
                                   [&](const std::string& c) { return winning.contains(c); });
    if (match) out.push_back(synset);
  }
  return out;
}

CategorySet winning_categories(std::span<const CategoryAssignment> assignments) {
  CategorySet out;
  for (const auto& a : assignments) out.insert(a.category);
  return out;
}

ArticleInference infer_article(std::span<const std::string> keywords, KnowledgeBackend& backend,
                               const InferenceConfig& config) {
  if (keywords.empty()) throw ContractError("infer_article needs at least one keyword");

  std::vector<std::string> normalized;
  std::set<std::string> seen;
  for (const auto& raw : keywords) {
    auto kw = normalize_keyword(raw);
    if (!kw.empty() && seen.insert(kw).second) normalized.push_back(std::move(kw));
  }

  ArticleInference result;
  result.profiles.reserve(normalized.size());
  for (const auto& kw : normalized) {
    auto synsets = fetch_synsets(kw, backend);
    if (synsets.empty() && config.composed_fallback) {
      if (auto resolution = resolve_composed(kw, backend, config)) {
        result.profiles.push_back(promote_to_profile(*resolution));
        continue;
      }
    }
    result.profiles.push_back(build_profile(kw, std::move(synsets), config.noise));
  }
  result.assignments = connect_categories(result.profiles, config);
  return result;
}

}  // namespace synsem
