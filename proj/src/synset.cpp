#include "synsem/synset.hpp"

#include <set>

#include "synsem/errors.hpp"

namespace synsem {
namespace {

void check_labels(std::string_view keyword, std::size_t index, const char* field,
                  const std::vector<std::string>& labels, std::vector<SynsetIssue>& issues) {
  std::set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      issues.push_back({std::string(keyword), index, std::string("empty string in ") + field});
    } else if (!seen.insert(label).second) {
      issues.push_back({std::string(keyword), index, std::string("duplicate '") + label + "' in " + field});
    }
  }
}

std::vector<std::string> string_array(const nlohmann::json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw DecodeError(std::string("missing field '") + field + "'");
  if (!it->is_array()) throw DecodeError(std::string("field '") + field + "' is not an array");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) throw DecodeError(std::string("field '") + field + "' holds a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string SynsetIssue::describe() const {
  return "keyword '" + keyword + "', record " + std::to_string(index) + ": " + message;
}

std::vector<SynsetIssue> check_synsets(std::string_view keyword, std::span<const Synset> synsets) {
  std::vector<SynsetIssue> issues;
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < synsets.size(); ++i) {
    const Synset& s = synsets[i];
    if (s.id.empty()) {
      issues.push_back({std::string(keyword), i, "empty synset id"});
    } else if (!ids.insert(s.id).second) {
      issues.push_back({std::string(keyword), i, "duplicate synset id '" + s.id + "'"});
    }
    if (s.lemma != keyword) {
      issues.push_back({std::string(keyword), i, "lemma '" + s.lemma + "' does not match the queried keyword"});
    }
    check_labels(keyword, i, "categories", s.categories, issues);
    check_labels(keyword, i, "domains", s.domains, issues);
    check_labels(keyword, i, "synonyms", s.synonyms, issues);
  }
  return issues;
}

nlohmann::json synset_to_json(const Synset& synset) {
  return nlohmann::json{{"id", synset.id},
                        {"categories", synset.categories},
                        {"domains", synset.domains},
                        {"synonyms", synset.synonyms}};
}

Synset synset_from_json(const nlohmann::json& j, const std::string& lemma) {
  if (!j.is_object()) throw DecodeError("synset record is not an object");
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw DecodeError("missing or non-string field 'id'");
  Synset s;
  s.id = id->get<std::string>();
  s.lemma = lemma;
  s.categories = string_array(j, "categories");
  s.domains = string_array(j, "domains");
  s.synonyms = string_array(j, "synonyms");
  return s;
}

nlohmann::json synsets_to_json(std::span<const Synset> synsets) {
  auto arr = nlohmann::json::array();
  for (const auto& s : synsets) arr.push_back(synset_to_json(s));
  return arr;
}

std::vector<Synset> synsets_from_json(const nlohmann::json& j, const std::string& lemma) {
  if (!j.is_array()) throw DecodeError("synset list is not an array");
  std::vector<Synset> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(synset_from_json(j[i], lemma));
    } catch (const DecodeError& e) {
      throw DecodeError("record " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace synsem
