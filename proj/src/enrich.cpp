#include "synsem/enrich.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace synsem {

std::vector<EnrichedArticle> enrich_articles(std::span<const ArticleRecord> articles, KnowledgeBackend& backend,
                                             const EnrichOptions& options) {
  const std::string fingerprint = config_fingerprint(options.config);
  std::vector<EnrichedArticle> out(articles.size());
  std::vector<std::exception_ptr> errors(articles.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < articles.size() && !failed.load(); i = next.fetch_add(1)) {
      try {
        EnrichedArticle record;
        record.article = articles[i];
        record.config_fingerprint = fingerprint;
        record.enriched_at = options.enriched_at;
        if (record.article.inferable()) {
          auto inference = infer_article(record.article.keywords, backend, options.config);
          record.assignments = std::move(inference.assignments);
          for (const auto& p : inference.profiles) record.profiles.push_back(to_record(p));
        }
        out[i] = std::move(record);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.parallelism, static_cast<unsigned>(articles.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace synsem
