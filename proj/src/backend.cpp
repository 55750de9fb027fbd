#include "synsem/backend.hpp"

#include "synsem/errors.hpp"
#include "synsem/text.hpp"

namespace synsem {

std::vector<Synset> fetch_synsets(const std::string& keyword, KnowledgeBackend& backend) {
  if (!is_normalized(keyword)) {
    throw ContractError("fetch_synsets requires a non-empty normalized keyword, got '" + keyword + "'");
  }
  auto synsets = backend.lookup(keyword);
  auto issues = check_synsets(keyword, synsets);
  if (!issues.empty()) {
    throw DecodeError("backend '" + backend.tag() + "' returned an invalid synset: " + issues.front().describe());
  }
  return synsets;
}

}  // namespace synsem
