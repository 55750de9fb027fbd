#pragma once

#include <span>
#include <string>
#include <vector>

#include "synsem/corpus.hpp"

namespace synsem {

struct EnrichOptions {
  InferenceConfig config;
  std::string enriched_at;
  // Articles processed concurrently; each worker shares the backend.
  unsigned parallelism = 1;
};

// Runs infer_article over every inferable record. Output order follows input
// order regardless of parallelism. The first failure (by record order) is
// rethrown after all workers stop.
std::vector<EnrichedArticle> enrich_articles(std::span<const ArticleRecord> articles, KnowledgeBackend& backend,
                                             const EnrichOptions& options);

}  // namespace synsem
