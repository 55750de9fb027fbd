#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "synsem/synset.hpp"

namespace synsem {

// A source of synsets for normalized keywords. Implementations must tolerate
// concurrent lookup() calls.
class KnowledgeBackend {
 public:
  virtual ~KnowledgeBackend() = default;

  // Every synset known for `keyword`, in backend order. An empty vector means
  // "no data"; failures to obtain an answer throw TransportError/DecodeError.
  virtual std::vector<Synset> lookup(const std::string& keyword) = 0;

  // Short label recorded in cache entries, e.g. "snapshot" or "remote:EN".
  virtual std::string tag() const = 0;

  // How long a cached empty answer stays trustworthy. nullopt: forever.
  virtual std::optional<std::chrono::seconds> negative_ttl() const { return std::nullopt; }
};

// Checked lookup: requires a non-empty normalized keyword (ContractError) and
// rejects responses that break Synset invariants (DecodeError naming the
// offending record).
std::vector<Synset> fetch_synsets(const std::string& keyword, KnowledgeBackend& backend);

}  // namespace synsem
