// Acceptance suite: one line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "corpus_support.hpp"
#include "kb_stub_server.hpp"
#include "synsem/atomic_file.hpp"
#include "synsem/cli.hpp"
#include "synsem/composed.hpp"
#include "synsem/enrich.hpp"
#include "synsem/noise.hpp"
#include "synsem/snapshot.hpp"
#include "synsem/text.hpp"
#include "test_support.hpp"

using namespace synsem;
using namespace synsem::testing;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kRandomInstances = 1000;

// Collects failed expectations for one criterion.
struct Checker {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    else if (!ok) failures.back() = "... and more";
  }
};

SnapshotBackend snapshot_backend(const std::string& name) {
  return SnapshotBackend(std::make_shared<SnapshotStore>(load_snapshot(fixture(name))));
}

double elapsed_s(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

void ac1_worked_example(Checker& c) {
  const auto start = Clock::now();
  auto backend = snapshot_backend("gravity_snapshot.json");
  const auto article = ingest(fixture("gravity_articles.jsonl")).at(0);
  const auto result = infer_article(article.keywords, backend, InferenceConfig{});
  c.expect(result.assignments.size() == 1, "expected exactly one assignment, got " +
                                               std::to_string(result.assignments.size()));
  if (!result.assignments.empty()) {
    const auto& top = result.assignments.front();
    c.expect(case_fold(top.category) == "celestial mechanics", "top assignment is '" + top.category + "'");
    c.expect(top.support == 2, "support " + std::to_string(top.support));
  }
  c.expect(elapsed_s(start) < 1.0, "runtime >= 1 s");
}

void ac2_composed_example(Checker& c) {
  const auto start = Clock::now();
  const auto store = load_snapshot(fixture("flight_snapshot.json"));
  const auto& flapping = store.lookup("flapping");
  const auto& flight = store.lookup("flight");
  c.expect(flapping.size() == 3, "flapping has " + std::to_string(flapping.size()) + " synsets");
  c.expect(flight.size() == 25, "flight has " + std::to_string(flight.size()) + " synsets");

  const auto a = build_profile("flapping", flapping, NoisePolicy{}).supported_categories;
  const auto b = build_profile("flight", flight, NoisePolicy{}).supported_categories;
  std::size_t shared = 0;
  for (const auto& [key, label] : a) shared += b.contains(label) ? 1 : 0;
  c.expect(shared == 1, std::to_string(shared) + " shared categories");

  SnapshotBackend backend(std::make_shared<SnapshotStore>(store));
  const auto r = resolve_composed("flapping flight", backend, InferenceConfig{});
  c.expect(r.has_value(), "resolve_composed returned nothing");
  if (r) {
    c.expect(r->derived_categories.labels() == std::vector<std::string>{"Aerodynamics"},
             "derived categories differ from {Aerodynamics}");
    c.expect(r->token_synset_counts == std::vector<std::size_t>{3, 25}, "token synset counts differ from 3, 25");
  }
  c.expect(elapsed_s(start) < 1.0, "runtime >= 1 s");
}

void ac3_fallback_switch(Checker& c) {
  auto backend = snapshot_backend("flight_snapshot.json");
  const auto article = ingest(fixture("flight_articles.jsonl")).at(0);
  std::size_t with_data = 0;
  for (const auto& kw : article.keywords) with_data += backend.lookup(kw).empty() ? 0 : 1;
  c.expect(with_data == 1, std::to_string(with_data) + " of 3 keywords return synsets");

  InferenceConfig off;
  off.composed_fallback = false;
  const auto without = infer_article(article.keywords, backend, off);
  c.expect(without.assignments.empty(), "fallback disabled still assigns categories");

  const auto with = infer_article(article.keywords, backend, InferenceConfig{});
  bool aero = false;
  for (const auto& a : with.assignments) {
    if (case_fold(a.category) == "aerodynamics") aero = a.support >= 2;
  }
  c.expect(aero, "Aerodynamics not assigned with support >= 2 when fallback enabled");
}

bool subset_of(const std::vector<CategoryAssignment>& small, const std::vector<CategoryAssignment>& big) {
  for (const auto& a : small) {
    auto it = std::find_if(big.begin(), big.end(), [&](const auto& b) { return b.category == a.category; });
    if (it == big.end() || it->support != a.support) return false;
  }
  return true;
}

void ac4_monotonicity(Checker& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(7331), gold_rng(99);
  InferenceConfig k2, k3;
  k3.min_support = 3;

  std::vector<EnrichedArticle> batch;
  std::vector<GoldLabel> gold;
  std::size_t sweeps = 0;
  for (int i = 0; i < kRandomInstances; ++i) {
    const auto inst = random_instance(rng);
    const auto profiles = profiles_of(inst, NoisePolicy{});
    const auto at2 = connect_categories(profiles, k2);
    const auto at3 = connect_categories(profiles, k3);
    c.expect(subset_of(at3, at2), "instance " + std::to_string(i) + ": k=3 assignments not within k=2");

    EnrichedArticle record;
    record.article.id = "r" + std::to_string(i);
    record.article.title = "t";
    for (const auto& [kw, synsets] : inst.keyword_synsets) record.article.keywords.push_back(kw);
    record.assignments = at2;
    for (const auto& p : profiles) record.profiles.push_back(to_record(p));
    record.config_fingerprint = config_fingerprint(k2);
    record.enriched_at = "2026-01-01T00:00:00Z";
    if (gold_rng() % 2) {
      CategorySet g;
      for (int n = 1 + static_cast<int>(gold_rng() % 3); n > 0; --n)
        g.insert(label_pool()[gold_rng() % label_pool().size()]);
      gold.push_back({record.article.id, g});
    }
    batch.push_back(std::move(record));

    if (batch.size() == 10) {
      const auto report = threshold_sweep(EnrichedCorpus(batch), gold, 2, 5);
      for (std::size_t t = 1; t < report.per_threshold.size(); ++t) {
        const auto& lo = report.per_threshold[t - 1];
        const auto& hi = report.per_threshold[t];
        c.expect(hi.recall <= lo.recall, "recall rises between k=" + std::to_string(lo.min_support) + " and " +
                                             std::to_string(hi.min_support));
        c.expect(hi.coverage <= lo.coverage, "coverage rises between k=" + std::to_string(lo.min_support) +
                                                 " and " + std::to_string(hi.min_support));
      }
      ++sweeps;
      batch.clear();
      gold.clear();
    }
  }
  c.expect(sweeps == kRandomInstances / 10, "sweep count");
  c.expect(elapsed_s(start) < 30.0, "runtime >= 30 s");
}

void ac5_oracle_equivalence(Checker& c) {
  std::mt19937_64 rng(7331);  // same instances as the monotonicity run
  for (int i = 0; i < kRandomInstances; ++i) {
    const auto inst = random_instance(rng);
    for (int k : {2, 3}) {
      InferenceConfig config;
      config.min_support = k;
      c.expect(as_oracle_form(connect_categories(profiles_of(inst, NoisePolicy{}), config)) ==
                   oracle_connect(inst.keyword_synsets, NoisePolicy{}, k),
               "connect_categories mismatch on instance " + std::to_string(i) + " at k=" + std::to_string(k));
    }
  }

  std::mt19937_64 composed_rng(7332);
  for (int i = 0; i < kRandomInstances; ++i) {
    ComposedInstance inst;
    fill_composed_instance(composed_rng, inst);
    for (const auto& kw : inst.keywords) {
      const auto tokens = tokenize_keyword(kw);
      const auto r = resolve_composed(kw, inst.backend, InferenceConfig{});
      std::set<std::string> got;
      if (r) {
        for (const auto& [key, label] : r->derived_categories) got.insert(oracle_fold(label));
      }
      const auto want = tokens.empty() ? std::set<std::string>{} : oracle_composed(tokens, inst.backend, NoisePolicy{});
      c.expect(got == want, "resolve_composed mismatch on '" + kw + "' in instance " + std::to_string(i));
    }
  }
}

void ac6_evaluation(Checker& c) {
  const EnrichedCorpus corpus(evaluation_corpus());
  const auto report = threshold_sweep(corpus, evaluation_gold(), 2, 3);
  if (report.per_threshold.size() != 2) {
    c.expect(false, "expected two threshold rows");
    return;
  }
  const auto& k2 = report.per_threshold[0];
  const auto& k3 = report.per_threshold[1];
  c.expect(k2.counts.true_positive == 6 && k2.counts.false_positive == 2, "k=2 pair counts");
  c.expect(k2.precision == 6.0 / 8.0, "k=2 precision != 6/8");
  c.expect(k2.recall == 6.0 / 13.0, "k=2 recall != 6/13");
  c.expect(k3.counts.true_positive == 3 && k3.counts.false_positive == 0, "k=3 pair counts");
  c.expect(k3.precision == 3.0 / 3.0, "k=3 precision != 3/3");
  c.expect(k3.recall == 3.0 / 13.0, "k=3 recall != 3/13");
  c.expect(k3.precision >= k2.precision, "precision falls from k=2 to k=3");
}

void ac7_coverage(Checker& c) {
  std::vector<EnrichedArticle> records;
  for (int i = 0; i < 595; ++i) {
    std::vector<std::pair<std::string, int>> cats;
    if (i % 5 == 0 && i / 5 < 119) cats = {{"Physics", 2}};
    else if (i % 5 == 1 && i / 5 < 12) cats = {{"Optics", 3}, {"Lasers", 2}};
    records.push_back(make_enriched("p" + std::to_string(i), cats));
  }
  const auto stats = corpus_stats(EnrichedCorpus(records));
  c.expect(stats.total_articles == 595, "total articles");
  c.expect(stats.covered_articles == 131, "covered articles " + std::to_string(stats.covered_articles));
  std::ostringstream v;
  v << stats.coverage;
  c.expect(std::abs(stats.coverage - 0.2202) <= 1e-4, "coverage " + v.str());
}

cli::Environment test_env(std::map<std::string, std::string> vars) {
  auto env = cli::default_environment();
  env.getenv = [vars = std::move(vars)](const std::string& name) -> std::optional<std::string> {
    auto it = vars.find(name);
    return it == vars.end() ? std::nullopt : std::optional<std::string>(it->second);
  };
  return env;
}

int run_cli(const std::vector<std::string>& args, const cli::Environment& env) {
  std::ostringstream out, err;
  return cli::run(args, out, err, env);
}

void ac8_determinism_and_cache(Checker& c) {
  TempDir dir;
  const auto env = test_env({});
  const auto articles = fixture("gravity_articles.jsonl").string();
  const auto snapshot = "snapshot:" + fixture("gravity_snapshot.json").string();
  const int a = run_cli({"enrich", articles, "--backend", snapshot, "--out", (dir / "a.jsonl").string()}, env);
  const int b = run_cli({"enrich", articles, "--backend", snapshot, "--out", (dir / "b.jsonl").string()}, env);
  c.expect(a == 0 && b == 0, "snapshot enrich failed");
  if (a == 0 && b == 0) c.expect(read_file(dir / "a.jsonl") == read_file(dir / "b.jsonl"), "snapshot runs differ");

  // Remote path through a local HTTP stub.
  KbStubServer server(load_snapshot(fixture("gravity_snapshot.json")), "acceptance-key");
  std::ofstream(dir / "remote.json") << nlohmann::json{{"cache_dir", (dir / "cache").string()},
                                                       {"remote", {{"base_url", server.base_url()},
                                                                   {"rate_per_second", 1000}}}}
                                            .dump();
  const auto remote_env = test_env({{"SYNSEM_KB_KEY", "acceptance-key"}, {"SOURCE_DATE_EPOCH", "0"}});
  const std::vector<std::string> base{"enrich", articles, "--backend", "remote", "--config",
                                      (dir / "remote.json").string(), "--out"};
  auto first = base, second = base;
  first.push_back((dir / "r1.jsonl").string());
  second.push_back((dir / "r2.jsonl").string());
  c.expect(run_cli(first, remote_env) == 0, "first remote run failed");
  const auto after_first = server.requests();
  c.expect(after_first > 0, "first remote run made no requests");
  c.expect(run_cli(second, remote_env) == 0, "second remote run failed");
  c.expect(server.requests() == after_first,
           "second remote run made " + std::to_string(server.requests() - after_first) + " requests");
  c.expect(read_file(dir / "r1.jsonl") == read_file(dir / "r2.jsonl"), "remote runs differ");
}

void ac9_noise(Checker& c) {
  const NoisePolicy policy;
  const std::vector<std::pair<std::string, bool>> suite{
      {"American_singer", true},        {"canadian_SINGER", true},     {"Progressive_rock_album", true},
      {"Living people", true},          {"LIVING PEOPLE", true},       {"American singers", true},
      {"2010s albums", true},           {"English-language films", true}, {"french-language films", true},
      {"American films", true},         {"Celestial mechanics", false}, {"Singer (company)", false},
      {"Living people of Mars", false}, {"Album covers", false},       {"Films about physicists", false},
      {"Aerodynamics", false},          {"singer_songwriter", false},  {"People", false},
  };
  CategorySet input, expected;
  for (const auto& [label, noise] : suite) {
    c.expect(is_noise(label, policy) == noise, "'" + label + "' classified wrongly");
    c.expect(oracle_is_noise(label, policy) == noise, "fnmatch disagrees on '" + label + "'");
    input.insert(label);
    if (!noise) expected.insert(label);
  }
  const auto once = apply_noise_filter(input, policy);
  c.expect(once == expected, "filter did not remove exactly the noise labels");
  c.expect(apply_noise_filter(once, policy) == once, "filter is not idempotent");
  NoisePolicy off = policy;
  off.enabled = false;
  c.expect(apply_noise_filter(input, off) == input, "disabled filter changed the set");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"AC1 worked example: celestial mechanics is the sole assignment", ac1_worked_example},
      {"AC2 flapping flight: 3 and 25 synsets, one shared category, Aerodynamics", ac2_composed_example},
      {"AC3 fallback off gives nothing, on assigns Aerodynamics", ac3_fallback_switch},
      {"AC4 threshold monotonicity over random instances and sweeps", ac4_monotonicity},
      {"AC5 brute-force oracle equivalence", ac5_oracle_equivalence},
      {"AC6 evaluation fractions on the ten-article corpus", ac6_evaluation},
      {"AC7 coverage 131/595", ac7_coverage},
      {"AC8 byte-identical reruns, no fetches on a warm cache", ac8_determinism_and_cache},
      {"AC9 noise filter suite", ac9_noise},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Checker c;
    const auto start = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << c.checks << " checks, " << ms << " ms)";
    for (const auto& f : c.failures) std::cout << "\n         " << f;
    std::cout << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
