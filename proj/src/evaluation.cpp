#include "synsem/evaluation.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "synsem/errors.hpp"

namespace fs = std::filesystem;

namespace synsem {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::vector<GoldLabel> load_gold(const fs::path& path) {
  if (!fs::exists(path)) throw InputError("gold file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::vector<GoldLabel> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = path.string() + ":" + std::to_string(number) + ": ";
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + "malformed record: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("article_id") || !doc["article_id"].is_string() ||
        !doc.contains("correct_categories") || !doc["correct_categories"].is_array()) {
      throw InputError(where + "expected {article_id: string, correct_categories: [string]}");
    }
    GoldLabel label;
    label.article_id = doc["article_id"].get<std::string>();
    for (const auto& c : doc["correct_categories"]) {
      if (!c.is_string() || c.get<std::string>().empty()) throw InputError(where + "category labels must be non-empty strings");
      label.correct_categories.insert(c.get<std::string>());
    }
    if (label.correct_categories.empty()) throw InputError(where + "correct_categories is empty");
    if (!ids.insert(label.article_id).second) throw InputError(where + "repeated article_id '" + label.article_id + "'");
    out.push_back(std::move(label));
  }
  return out;
}

EvaluationReport evaluate(const EnrichedCorpus& corpus, std::span<const GoldLabel> gold,
                          std::span<const int> thresholds) {
  if (thresholds.empty()) throw InputError("at least one threshold is required");
  for (int t : thresholds) {
    if (t < 2) throw InputError("threshold " + std::to_string(t) + " is below the minimum of 2");
  }
  std::vector<std::string> missing;
  std::map<std::string, const CategorySet*> gold_by_id;
  std::size_t gold_total = 0;
  for (const auto& g : gold) {
    if (!corpus.find(g.article_id)) missing.push_back(g.article_id);
    gold_by_id[g.article_id] = &g.correct_categories;
    gold_total += g.correct_categories.size();
  }
  if (!missing.empty()) {
    std::string msg = "gold labels reference unknown article ids:";
    for (const auto& id : missing) msg += " " + id;
    throw InputError(msg);
  }

  EvaluationReport report;
  report.config_fingerprint = corpus.config_fingerprint();
  for (int t : thresholds) {
    ThresholdRow row;
    row.min_support = t;
    row.counts.gold_total = gold_total;
    row.counts.total_articles = corpus.records().size();
    for (const auto& record : corpus.records()) {
      auto it = gold_by_id.find(record.article.id);
      const CategorySet* truth = it == gold_by_id.end() ? nullptr : it->second;
      bool covered = false;
      for (const auto& a : record.assignments) {
        if (a.support < t) continue;
        covered = true;
        if (truth && truth->contains(a.category)) {
          ++row.counts.true_positive;
        } else {
          ++row.counts.false_positive;
        }
      }
      if (covered) ++row.counts.covered_articles;
    }
    const std::size_t assigned = row.counts.true_positive + row.counts.false_positive;
    row.vacuous_precision = assigned == 0;
    row.precision = row.vacuous_precision ? 1.0 : ratio(row.counts.true_positive, assigned);
    row.recall = ratio(row.counts.true_positive, row.counts.gold_total);
    row.coverage = ratio(row.counts.covered_articles, row.counts.total_articles);
    report.per_threshold.push_back(row);
  }
  return report;
}

EvaluationReport threshold_sweep(const EnrichedCorpus& corpus, std::span<const GoldLabel> gold, int t_min,
                                 int t_max) {
  if (t_min < 2 || t_max < t_min) {
    throw InputError("threshold range must satisfy 2 <= min <= max, got " + std::to_string(t_min) + ".." +
                     std::to_string(t_max));
  }
  std::vector<int> thresholds;
  for (int t = t_min; t <= t_max; ++t) thresholds.push_back(t);
  return evaluate(corpus, gold, thresholds);
}

std::map<std::string, EvaluationReport> evaluate_by_journal(const EnrichedCorpus& corpus,
                                                            std::span<const GoldLabel> gold,
                                                            std::span<const int> thresholds) {
  evaluate(corpus, gold, thresholds);  // validates ids and thresholds
  std::map<std::string, std::vector<EnrichedArticle>> groups;
  for (const auto& r : corpus.records()) groups[r.article.journal.value_or("(none)")].push_back(r);

  std::map<std::string, EvaluationReport> out;
  for (auto& [journal, records] : groups) {
    EnrichedCorpus sub(std::move(records));
    std::vector<GoldLabel> sub_gold;
    for (const auto& g : gold) {
      if (sub.find(g.article_id)) sub_gold.push_back(g);
    }
    out.emplace(journal, evaluate(sub, sub_gold, thresholds));
  }
  return out;
}

std::string format_report(const EvaluationReport& report) {
  std::ostringstream out;
  out << "config_fingerprint: " << (report.config_fingerprint.empty() ? "(none)" : report.config_fingerprint) << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %-10s %-8s %-8s %6s %6s %10s %8s %8s\n", "min_support", "precision",
                "recall", "coverage", "tp", "fp", "gold_total", "covered", "articles");
  out << line;
  bool any_vacuous = false;
  for (const auto& row : report.per_threshold) {
    std::string precision = fixed4(row.precision) + (row.vacuous_precision ? "*" : "");
    any_vacuous = any_vacuous || row.vacuous_precision;
    std::snprintf(line, sizeof line, "%-11d %-10s %-8s %-8s %6zu %6zu %10zu %8zu %8zu\n", row.min_support,
                  precision.c_str(), fixed4(row.recall).c_str(), fixed4(row.coverage).c_str(),
                  row.counts.true_positive, row.counts.false_positive, row.counts.gold_total,
                  row.counts.covered_articles, row.counts.total_articles);
    out << line;
  }
  if (any_vacuous) out << "* no assignments at this threshold; precision is vacuous\n";
  return out.str();
}

std::string format_report_tsv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "min_support\tprecision\trecall\tcoverage\tvacuous\ttp\tfp\tgold_total\tcovered\tarticles\n";
  for (const auto& row : report.per_threshold) {
    out << row.min_support << '\t' << fixed4(row.precision) << '\t' << fixed4(row.recall) << '\t'
        << fixed4(row.coverage) << '\t' << (row.vacuous_precision ? 1 : 0) << '\t' << row.counts.true_positive
        << '\t' << row.counts.false_positive << '\t' << row.counts.gold_total << '\t' << row.counts.covered_articles
        << '\t' << row.counts.total_articles << '\n';
  }
  return out.str();
}

}  // namespace synsem
