#pragma once

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synsem {

// One knowledge-base sense of a keyword. The label lists keep backend order
// and hold no empty or duplicate strings.
struct Synset {
  std::string id;
  std::string lemma;  // normalized keyword that produced this synset
  std::vector<std::string> categories;
  std::vector<std::string> domains;
  std::vector<std::string> synonyms;

  bool operator==(const Synset&) const = default;
};

struct SynsetIssue {
  std::string keyword;
  std::size_t index = 0;  // position of the synset within the keyword's list
  std::string message;

  std::string describe() const;
};

// Every invariant violation in one keyword's synset list: empty or repeated
// ids, empty or repeated labels, lemma mismatch.
std::vector<SynsetIssue> check_synsets(std::string_view keyword, std::span<const Synset> synsets);

// {id, categories, domains, synonyms}; the lemma is implied by the enclosing key.
nlohmann::json synset_to_json(const Synset& synset);

// Throws DecodeError when the object lacks fields or has wrongly typed ones.
Synset synset_from_json(const nlohmann::json& j, const std::string& lemma);

nlohmann::json synsets_to_json(std::span<const Synset> synsets);
std::vector<Synset> synsets_from_json(const nlohmann::json& j, const std::string& lemma);

}  // namespace synsem
