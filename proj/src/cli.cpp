#include "synsem/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <set>

#include "synsem/atomic_file.hpp"
#include "synsem/cache.hpp"
#include "synsem/corpus.hpp"
#include "synsem/enrich.hpp"
#include "synsem/errors.hpp"
#include "synsem/evaluation.hpp"
#include "synsem/snapshot.hpp"
#include "synsem/text.hpp"
#include "synsem/timestamp.hpp"

namespace fs = std::filesystem;

namespace synsem::cli {
namespace {

constexpr std::string_view kSnapshotPrefix = "snapshot:";

template <typename T>
T number_at(const nlohmann::json& obj, const char* key, T min_value) {
  const auto& v = obj.at(key);
  if (!v.is_number() || v.get<double>() < static_cast<double>(min_value)) {
    throw InputError(std::string("configuration key '") + key + "' must be a number >= " +
                     std::to_string(min_value));
  }
  return v.get<T>();
}

std::string string_at(const nlohmann::json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw InputError(std::string("configuration key '") + key + "' must be a string");
  return v.get<std::string>();
}

RemoteOptions remote_from_json(const nlohmann::json& doc, RemoteOptions opts) {
  if (!doc.is_object()) throw InputError("'remote' must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "base_url") {
      opts.base_url = string_at(doc, "base_url");
    } else if (key == "api_key") {
      opts.api_key = string_at(doc, "api_key");
    } else if (key == "rate_per_second") {
      opts.requests_per_second = number_at<double>(doc, "rate_per_second", 0.001);
    } else if (key == "max_attempts") {
      opts.max_attempts = number_at<int>(doc, "max_attempts", 1);
    } else if (key == "backoff_ms") {
      opts.initial_backoff = std::chrono::milliseconds(number_at<long long>(doc, "backoff_ms", 0));
    } else if (key == "negative_ttl_seconds") {
      opts.negative_ttl = std::chrono::seconds(number_at<long long>(doc, "negative_ttl_seconds", 0));
    } else {
      throw InputError("unknown configuration key 'remote." + key + "'");
    }
  }
  return opts;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  const Environment& env;
};

std::string enriched_at_for(const Context& ctx, const SnapshotStore* snapshot) {
  if (auto epoch = ctx.env.getenv("SOURCE_DATE_EPOCH")) {
    try {
      return to_iso8601(std::chrono::system_clock::from_time_t(std::stoll(*epoch)));
    } catch (const std::exception&) {
      throw InputError("SOURCE_DATE_EPOCH must be an integer");
    }
  }
  if (snapshot) {
    if (from_iso8601(snapshot->meta().created)) return snapshot->meta().created;
    return to_iso8601(std::chrono::system_clock::from_time_t(0));
  }
  return to_iso8601(std::chrono::system_clock::now());
}

std::string summarize(const std::vector<EnrichedArticle>& records) {
  std::map<std::string, std::pair<std::string, std::size_t>> counts;  // folded -> (label, articles)
  std::size_t covered = 0;
  for (const auto& r : records) {
    if (!r.assignments.empty()) ++covered;
    for (const auto& a : r.assignments) {
      auto [it, inserted] = counts.try_emplace(case_fold(a.category), a.category, 0);
      ++it->second.second;
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (const auto& [key, entry] : counts) ranked.push_back(entry);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  std::string line = "articles: " + std::to_string(records.size()) + ", covered: " + std::to_string(covered) +
                     ", distinct categories: " + std::to_string(counts.size());
  if (!ranked.empty()) {
    line += " [";
    for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) {
      if (i) line += "; ";
      line += ranked[i].first;
    }
    if (ranked.size() > 5) line += "; ...";
    line += "]";
  }
  return line;
}

int cmd_enrich(const Context& ctx, const fs::path& articles_path, const std::string& backend_spec,
               const std::optional<fs::path>& config_path, const std::optional<std::string>& language,
               const fs::path& out_path) {
  AppConfig config = load_app_config(config_path);
  if (language) {
    auto overrides = to_json(config.inference);
    overrides["language"] = *language;
    config.inference = inference_config_from_json(overrides);
  }
  config.remote.language = config.inference.language;

  const auto articles = ingest(articles_path);

  std::unique_ptr<KnowledgeBackend> backend;
  const SnapshotStore* snapshot = nullptr;
  std::optional<fs::path> cache_dir = config.cache_dir;
  if (backend_spec.rfind(kSnapshotPrefix, 0) == 0) {
    auto store = std::make_shared<const SnapshotStore>(load_snapshot(backend_spec.substr(kSnapshotPrefix.size())));
    snapshot = store.get();
    backend = std::make_unique<SnapshotBackend>(std::move(store));
  } else if (backend_spec == "remote") {
    if (auto key = ctx.env.getenv(kApiKeyVariable)) config.remote.api_key = *key;
    backend = std::make_unique<RemoteBackend>(config.remote, ctx.env.make_transport(config.remote.base_url, config.timeout));
    if (!cache_dir) cache_dir = fs::path(kDefaultRemoteCacheDir);
  } else {
    throw InputError("--backend must be 'snapshot:<path>' or 'remote', got '" + backend_spec + "'");
  }

  std::optional<SynsetCache> cache;
  std::unique_ptr<CachingBackend> caching;
  std::mutex err_mu;
  KnowledgeBackend* active = backend.get();
  if (cache_dir) {
    cache.emplace(*cache_dir);
    caching = std::make_unique<CachingBackend>(*backend, *cache, [&](const std::string& warning) {
      std::lock_guard lock(err_mu);
      ctx.err << "warning: " << warning << "\n";
    });
    active = caching.get();
  }

  EnrichOptions options{config.inference, enriched_at_for(ctx, snapshot), config.parallelism};
  const auto records = enrich_articles(articles, *active, options);
  persist_enriched(records, out_path);
  ctx.out << summarize(records) << "\n";
  return kSuccess;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      int t = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {t, t};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError("--thresholds must look like '<a>..<b>', got '" + text + "'");
  }
}

int cmd_evaluate(const Context& ctx, const fs::path& enriched_path, const fs::path& gold_path,
                 const std::string& thresholds, const std::optional<fs::path>& tsv_out) {
  const auto [lo, hi] = parse_range(thresholds);
  const auto corpus = EnrichedCorpus::load(enriched_path);
  const auto gold = load_gold(gold_path);
  const auto report = threshold_sweep(corpus, gold, lo, hi);
  ctx.out << format_report(report);

  std::set<std::string> journals;
  for (const auto& r : corpus.records()) journals.insert(r.article.journal.value_or("(none)"));
  if (journals.size() > 1) {
    std::vector<int> ts;
    for (int t = lo; t <= hi; ++t) ts.push_back(t);
    for (const auto& [journal, sub] : evaluate_by_journal(corpus, gold, ts)) {
      ctx.out << "\njournal: " << journal << "\n" << format_report(sub);
    }
  }
  if (tsv_out) write_file_atomic(*tsv_out, format_report_tsv(report));
  return kSuccess;
}

int cmd_query(const Context& ctx, const fs::path& enriched_path, const std::string& category) {
  const auto corpus = EnrichedCorpus::load(enriched_path);
  for (const auto& hit : corpus.query(category)) ctx.out << hit.article_id << "\t" << hit.support << "\n";
  return kSuccess;
}

int cmd_stats(const Context& ctx, const fs::path& enriched_path) {
  const auto stats = corpus_stats(EnrichedCorpus::load(enriched_path));
  char coverage[32];
  std::snprintf(coverage, sizeof coverage, "%.4f", stats.coverage);
  ctx.out << "articles: " << stats.total_articles << "\n"
          << "covered: " << stats.covered_articles << "\n"
          << "coverage: " << coverage << (stats.empty ? " (empty corpus)" : "") << "\n"
          << "distinct categories: " << stats.distinct_categories << "\n"
          << "assignments per article:\n";
  for (const auto& [n, articles] : stats.assignment_histogram) ctx.out << "  " << n << "\t" << articles << "\n";
  return kSuccess;
}

int cmd_snapshot_validate(const Context& ctx, const fs::path& path) {
  const auto result = validate_snapshot(path);
  if (!result.issues.empty()) {
    for (const auto& issue : result.issues) ctx.err << "invalid: " << issue.describe() << "\n";
    return kInputError;
  }
  std::size_t synsets = 0;
  for (const auto& [kw, list] : result.store.entries()) synsets += list.size();
  ctx.out << "ok: " << result.store.size() << " keywords, " << synsets << " synsets\n";
  return kSuccess;
}

int cmd_snapshot_build(const Context& ctx, const fs::path& cache_dir, const fs::path& out_path) {
  if (!fs::is_directory(cache_dir)) throw InputError("cache directory not found: " + cache_dir.string());
  SynsetCache cache(cache_dir);
  std::vector<std::string> warnings;
  std::map<std::string, std::vector<Synset>> entries;
  std::set<std::string> tags;
  std::string latest;
  for (auto& entry : cache.entries(&warnings)) {
    tags.insert(entry.backend_tag);
    latest = std::max(latest, entry.fetched_at);
    entries.emplace(entry.keyword, std::move(entry.synsets));
  }
  for (const auto& w : warnings) ctx.err << "warning: " << w << "\n";
  std::string source = "cache";
  for (const auto& t : tags) source += " " + t;
  SnapshotStore store(std::move(entries), SnapshotMeta{source, latest});
  write_file_atomic(out_path, serialize_snapshot(store));
  ctx.out << "wrote " << store.size() << " keywords to " << out_path.string() << "\n";
  return kSuccess;
}

}  // namespace

AppConfig app_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("configuration must be a JSON object");
  AppConfig config;
  nlohmann::json inference = nlohmann::json::object();
  for (const auto& [key, value] : doc.items()) {
    if (key == "cache_dir") {
      config.cache_dir = fs::path(string_at(doc, "cache_dir"));
    } else if (key == "parallelism") {
      config.parallelism = number_at<unsigned>(doc, "parallelism", 1u);
    } else if (key == "timeout_seconds") {
      config.timeout = std::chrono::seconds(number_at<long long>(doc, "timeout_seconds", 1));
    } else if (key == "remote") {
      config.remote = remote_from_json(value, config.remote);
    } else {
      inference[key] = value;
    }
  }
  config.inference = inference_config_from_json(inference);
  config.remote.language = config.inference.language;
  return config;
}

AppConfig load_app_config(const std::optional<fs::path>& path) {
  if (!path) return app_config_from_json(nlohmann::json::object());
  if (!fs::exists(*path)) throw InputError("config file not found: " + path->string());
  try {
    return app_config_from_json(nlohmann::json::parse(read_file(*path)));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed config '" + path->string() + "': " + e.what());
  }
}

Environment default_environment() {
  Environment env;
  env.make_transport = [](const std::string& base_url, std::chrono::seconds timeout) {
    return std::make_shared<HttplibTransport>(base_url, timeout);
  };
  env.getenv = [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    return v ? std::optional<std::string>(v) : std::nullopt;
  };
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Assign subject categories to articles by connecting keyword synsets through shared categories",
               "synsem"};
  app.require_subcommand(1);

  std::string articles, backend, enriched, gold, category, thresholds = "2..3", snapshot_path, cache_dir;
  std::optional<std::string> language;
  std::optional<fs::path> config, out_path;

  auto* enrich = app.add_subcommand("enrich", "Infer categories for every article and write an enriched corpus");
  enrich->add_option("articles", articles, "Line-delimited article records")->required();
  enrich->add_option("--backend", backend, "snapshot:<path> or remote")->required();
  enrich->add_option("--out", out_path, "Enriched corpus output path")->required();
  enrich->add_option("--config", config, "Configuration file");
  enrich->add_option("--language", language, "Knowledge-base language code (default EN)");

  auto* evaluate = app.add_subcommand("evaluate", "Score an enriched corpus against gold labels");
  evaluate->add_option("enriched", enriched, "Enriched corpus")->required();
  evaluate->add_option("gold", gold, "Line-delimited gold labels")->required();
  evaluate->add_option("--thresholds", thresholds, "Threshold range <a>..<b> (default 2..3)");
  evaluate->add_option("--out", out_path, "Optional tab-separated export of the report");

  auto* query = app.add_subcommand("query", "List articles assigned a category");
  query->add_option("enriched", enriched, "Enriched corpus")->required();
  query->add_option("category", category, "Category label (case-insensitive)")->required();

  auto* stats = app.add_subcommand("stats", "Coverage summary of an enriched corpus");
  stats->add_option("enriched", enriched, "Enriched corpus")->required();

  auto* snapshot = app.add_subcommand("snapshot", "Snapshot management");
  snapshot->require_subcommand(1);
  auto* validate = snapshot->add_subcommand("validate", "Check every synset invariant in a snapshot");
  validate->add_option("path", snapshot_path, "Snapshot file")->required();
  auto* build = snapshot->add_subcommand("build-from-cache", "Freeze cached responses into a snapshot");
  build->add_option("cache_dir", cache_dir, "Cache directory")->required();
  build->add_option("--out", out_path, "Snapshot output path")->required();

  std::vector<const char*> argv{"synsem"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const Context ctx{out, err, env};
  try {
    if (*enrich) return cmd_enrich(ctx, articles, backend, config, language, *out_path);
    if (*evaluate) return cmd_evaluate(ctx, enriched, gold, thresholds, out_path);
    if (*query) return cmd_query(ctx, enriched, category);
    if (*stats) return cmd_stats(ctx, enriched);
    if (*validate) return cmd_snapshot_validate(ctx, snapshot_path);
    if (*build) return cmd_snapshot_build(ctx, cache_dir, *out_path);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const TransportError& e) {
    err << "backend error: " << e.what() << "\n";
    return kBackendError;
  } catch (const DecodeError& e) {
    err << "backend error: " << e.what() << "\n";
    return kBackendError;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace synsem::cli
