#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synsem/inference.hpp"

namespace synsem {

// Categories recovered for a multi-word keyword from its space-separated
// tokens. Every derived category is supported by at least two distinct tokens.
struct ComposedResolution {
  std::string original;
  std::vector<std::string> tokens;
  std::vector<std::size_t> token_synset_counts;
  CategorySet derived_categories;
};

// Tokens of at least two characters, deduplicated, in order. Empty when fewer
// than two survive, i.e. the fallback does not apply.
std::vector<std::string> tokenize_keyword(std::string_view keyword);

// nullopt when the keyword does not tokenize or no category is shared by two
// tokens. The token threshold is always 2, independent of min_support.
std::optional<ComposedResolution> resolve_composed(const std::string& keyword, KnowledgeBackend& backend,
                                                   const InferenceConfig& config);

// A resolution with no derived categories is a ContractError.
KeywordProfile promote_to_profile(const ComposedResolution& resolution);

}  // namespace synsem
