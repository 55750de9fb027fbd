#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "synsem/corpus.hpp"

namespace synsem {

struct GoldLabel {
  std::string article_id;
  CategorySet correct_categories;
};

// Line-delimited {article_id, correct_categories[]}. Empty category lists and
// repeated ids are InputErrors.
std::vector<GoldLabel> load_gold(const std::filesystem::path& path);

struct ThresholdCounts {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t gold_total = 0;
  std::size_t covered_articles = 0;
  std::size_t total_articles = 0;

  bool operator==(const ThresholdCounts&) const = default;
};

struct ThresholdRow {
  int min_support = 2;
  double precision = 1.0;
  double recall = 0.0;
  double coverage = 0.0;
  bool vacuous_precision = false;  // no assigned pairs; precision reported as 1.0
  ThresholdCounts counts;
};

struct EvaluationReport {
  std::string config_fingerprint;
  std::vector<ThresholdRow> per_threshold;
};

// Scores (article, category) pairs whose stored support reaches each
// threshold. A pair is a true positive when its case-folded label is in the
// article's gold set, a false positive otherwise (articles without gold
// included). recall = tp / gold pairs; coverage = articles with at least one
// pair / all articles. Gold ids missing from the corpus and thresholds below 2
// are InputErrors.
EvaluationReport evaluate(const EnrichedCorpus& corpus, std::span<const GoldLabel> gold,
                          std::span<const int> thresholds);

// evaluate over [t_min, t_max], ascending.
EvaluationReport threshold_sweep(const EnrichedCorpus& corpus, std::span<const GoldLabel> gold, int t_min,
                                 int t_max);

// The same evaluation restricted to each journal's articles. Articles with no
// journal are grouped under "(none)".
std::map<std::string, EvaluationReport> evaluate_by_journal(const EnrichedCorpus& corpus,
                                                            std::span<const GoldLabel> gold,
                                                            std::span<const int> thresholds);

std::string format_report(const EvaluationReport& report);
std::string format_report_tsv(const EvaluationReport& report);

}  // namespace synsem
