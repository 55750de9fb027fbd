#include "synsem/composed.hpp"

#include <map>
#include <set>

#include "synsem/errors.hpp"
#include "synsem/text.hpp"

namespace synsem {
namespace {

constexpr std::size_t kMinTokenLength = 2;
constexpr std::size_t kTokenSupport = 2;

}  // namespace

std::vector<std::string> tokenize_keyword(std::string_view keyword) {
  std::vector<std::string> tokens;
  std::set<std::string> seen;
  std::size_t start = 0;
  while (start <= keyword.size()) {
    auto end = keyword.find(' ', start);
    if (end == std::string_view::npos) end = keyword.size();
    std::string token(keyword.substr(start, end - start));
    if (utf8_length(token) >= kMinTokenLength && seen.insert(token).second) tokens.push_back(std::move(token));
    start = end + 1;
  }
  if (tokens.size() < 2) tokens.clear();
  return tokens;
}

std::optional<ComposedResolution> resolve_composed(const std::string& keyword, KnowledgeBackend& backend,
                                                   const InferenceConfig& config) {
  if (!config.composed_fallback) throw ContractError("resolve_composed called with the fallback disabled");
  auto tokens = tokenize_keyword(keyword);
  if (tokens.empty()) return std::nullopt;

  ComposedResolution resolution;
  resolution.original = keyword;
  std::map<std::string, std::pair<std::string, std::size_t>> support;  // folded -> (display, tokens)
  for (const auto& token : tokens) {
    auto profile = build_profile(token, fetch_synsets(token, backend), config.noise);
    resolution.token_synset_counts.push_back(profile.synsets.size());
    for (const auto& [key, display] : profile.supported_categories) {
      auto [it, inserted] = support.try_emplace(key, display, 0);
      ++it->second.second;
    }
  }
  for (const auto& [key, entry] : support) {
    if (entry.second >= kTokenSupport) resolution.derived_categories.insert(entry.first);
  }
  if (resolution.derived_categories.empty()) return std::nullopt;
  resolution.tokens = std::move(tokens);
  return resolution;
}

KeywordProfile promote_to_profile(const ComposedResolution& resolution) {
  if (resolution.derived_categories.empty()) {
    throw ContractError("cannot promote '" + resolution.original + "': no derived categories");
  }
  KeywordProfile profile;
  profile.keyword = resolution.original;
  profile.supported_categories = resolution.derived_categories;
  profile.source = ProfileSource::composed_fallback;
  return profile;
}

}  // namespace synsem
