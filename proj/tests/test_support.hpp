#pragma once

#include <fnmatch.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "synsem/backend.hpp"
#include "synsem/errors.hpp"
#include "synsem/inference.hpp"

namespace synsem::testing {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(SYNSEM_FIXTURES) / name; }

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("synsem-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// In-memory backend that counts every lookup.
class StubBackend : public KnowledgeBackend {
 public:
  StubBackend() = default;
  explicit StubBackend(std::map<std::string, std::vector<Synset>> data) : data_(std::move(data)) {}

  std::vector<Synset> lookup(const std::string& keyword) override {
    calls_.fetch_add(1);
    {
      std::lock_guard lock(mu_);
      ++per_keyword_[keyword];
    }
    if (fail_) throw TransportError("stub backend offline");
    auto it = data_.find(keyword);
    return it == data_.end() ? std::vector<Synset>{} : it->second;
  }
  std::string tag() const override { return "stub"; }
  std::optional<std::chrono::seconds> negative_ttl() const override { return ttl_; }

  void add(const std::string& keyword, std::vector<Synset> synsets) { data_[keyword] = std::move(synsets); }
  void set_failing(bool fail) { fail_ = fail; }
  void set_negative_ttl(std::optional<std::chrono::seconds> ttl) { ttl_ = ttl; }

  std::size_t calls() const { return calls_.load(); }
  std::size_t calls_for(const std::string& keyword) const {
    std::lock_guard lock(mu_);
    auto it = per_keyword_.find(keyword);
    return it == per_keyword_.end() ? 0 : it->second;
  }

 private:
  std::map<std::string, std::vector<Synset>> data_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mu_;
  std::map<std::string, std::size_t> per_keyword_;
  bool fail_ = false;
  std::optional<std::chrono::seconds> ttl_;
};

inline Synset make_synset(const std::string& id, const std::string& lemma, std::vector<std::string> categories) {
  return Synset{id, lemma, std::move(categories), {}, {}};
}

// ---------------------------------------------------------------------------
// Oracles. These work from raw synset data with plain strings and POSIX
// fnmatch; they share no code path with the library beyond the data types.

inline std::string oracle_fold(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline bool oracle_is_noise(const std::string& label, const NoisePolicy& policy) {
  if (!policy.enabled) return false;
  for (const auto& p : policy.patterns) {
    if (::fnmatch(p.c_str(), label.c_str(), FNM_CASEFOLD) == 0) return true;
  }
  return false;
}

struct OracleAssignment {
  std::string folded_category;
  std::set<std::string> keywords;
  bool operator==(const OracleAssignment&) const = default;
};

// Enumerates every (keyword, category) pair and keeps categories reached by
// at least `threshold` distinct keywords, as (folded label, keywords).
inline std::vector<OracleAssignment> oracle_connect(
    const std::vector<std::pair<std::string, std::vector<Synset>>>& keyword_synsets, const NoisePolicy& noise,
    int threshold) {
  std::set<std::string> universe;
  for (const auto& [kw, synsets] : keyword_synsets)
    for (const auto& s : synsets)
      for (const auto& c : s.categories) universe.insert(oracle_fold(c));

  std::vector<OracleAssignment> out;
  for (const auto& category : universe) {
    OracleAssignment a{category, {}};
    for (const auto& [kw, synsets] : keyword_synsets) {
      for (const auto& s : synsets) {
        bool hit = false;
        for (const auto& c : s.categories) {
          if (oracle_fold(c) == category && !oracle_is_noise(c, noise)) hit = true;
        }
        if (hit) a.keywords.insert(kw);
      }
    }
    if (static_cast<int>(a.keywords.size()) >= threshold) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random small instances: <= 6 keywords, <= 8 synsets each, <= 12 labels.

struct RandomInstance {
  std::vector<std::pair<std::string, std::vector<Synset>>> keyword_synsets;
};

inline const std::vector<std::string>& label_pool() {
  // Twelve labels; some differ only by case and some are noise.
  static const std::vector<std::string> kPool = {
      "Aerodynamics", "aerodynamics", "Optics",        "Living people", "Rock_album",   "Fluid dynamics",
      "Pediatrics",   "Thermodynamics", "Pop_singer", "Genetics",      "American films", "Celestial mechanics",
  };
  return kPool;
}

inline RandomInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_keywords(1, 6), n_synsets(0, 8), n_cats(0, 4);
  std::uniform_int_distribution<std::size_t> pick(0, label_pool().size() - 1);
  RandomInstance inst;
  const int k = n_keywords(rng);
  for (int i = 0; i < k; ++i) {
    const std::string kw = "kw" + std::to_string(i);
    std::vector<Synset> synsets;
    const int n = n_synsets(rng);
    for (int j = 0; j < n; ++j) {
      std::vector<std::string> cats;
      std::set<std::string> seen;
      const int c = n_cats(rng);
      for (int m = 0; m < c; ++m) {
        const auto& label = label_pool()[pick(rng)];
        if (seen.insert(label).second) cats.push_back(label);
      }
      synsets.push_back(make_synset(kw + ":s" + std::to_string(j), kw, std::move(cats)));
    }
    inst.keyword_synsets.emplace_back(kw, std::move(synsets));
  }
  return inst;
}

inline std::vector<KeywordProfile> profiles_of(const RandomInstance& inst, const NoisePolicy& noise) {
  std::vector<KeywordProfile> out;
  for (const auto& [kw, synsets] : inst.keyword_synsets) out.push_back(build_profile(kw, synsets, noise));
  return out;
}

inline std::vector<OracleAssignment> as_oracle_form(const std::vector<CategoryAssignment>& assignments) {
  std::vector<OracleAssignment> out;
  for (const auto& a : assignments) {
    out.push_back({oracle_fold(a.category), std::set<std::string>(a.supporting_keywords.begin(), a.supporting_keywords.end())});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.folded_category < b.folded_category; });
  return out;
}

}  // namespace synsem::testing

namespace synsem::testing {

// Random provider for composed keywords: tokens t0..t5 carry random synsets,
// multi-word keywords built from them have no direct entry. Token categories
// come from the same twelve-label pool.
struct ComposedInstance {
  StubBackend backend;
  std::vector<std::string> keywords;  // composed and single-token article keywords
};

inline std::vector<Synset> random_synsets(std::mt19937_64& rng, const std::string& lemma) {
  std::uniform_int_distribution<int> n_synsets(0, 8), n_cats(0, 4);
  std::uniform_int_distribution<std::size_t> pick(0, label_pool().size() - 1);
  std::vector<Synset> synsets;
  for (int j = n_synsets(rng); j > 0; --j) {
    std::vector<std::string> cats;
    std::set<std::string> seen;
    for (int m = n_cats(rng); m > 0; --m) {
      const auto& label = label_pool()[pick(rng)];
      if (seen.insert(label).second) cats.push_back(label);
    }
    synsets.push_back(make_synset(lemma + ":s" + std::to_string(j), lemma, std::move(cats)));
  }
  return synsets;
}

inline void fill_composed_instance(std::mt19937_64& rng, ComposedInstance& inst) {
  const std::vector<std::string> tokens{"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};
  for (const auto& t : tokens) inst.backend.add(t, random_synsets(rng, t));
  std::uniform_int_distribution<int> n_keywords(1, 6), n_tokens(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, tokens.size() - 1);
  std::set<std::string> seen;
  for (int i = n_keywords(rng); i > 0; --i) {
    std::string kw;
    for (int t = n_tokens(rng); t > 0; --t) kw += (kw.empty() ? "" : " ") + tokens[pick(rng)];
    if (seen.insert(kw).second) inst.keywords.push_back(kw);
  }
}

// Token-level recount: for each category, the set of distinct tokens whose
// (noise-filtered) synsets carry it; keep those with >= 2 tokens.
inline std::set<std::string> oracle_composed(const std::vector<std::string>& tokens, StubBackend& backend,
                                             const NoisePolicy& noise) {
  std::vector<std::pair<std::string, std::vector<Synset>>> incidence;
  for (const auto& t : tokens) incidence.emplace_back(t, backend.lookup(t));
  std::set<std::string> out;
  for (const auto& a : oracle_connect(incidence, noise, 2)) out.insert(a.folded_category);
  return out;
}

}  // namespace synsem::testing
