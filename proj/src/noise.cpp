#include "synsem/noise.hpp"

#include "synsem/text.hpp"

namespace synsem {

const std::vector<std::string>& default_noise_patterns() {
  static const std::vector<std::string> kPatterns = {
      "*_singer",     "*_album",           "*singers",       "*albums",
      "living people", "*-language films", "american films", "english-language films",
  };
  return kPatterns;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  const std::string p = case_fold(pattern);
  const std::string t = case_fold(text);
  std::size_t pi = 0, ti = 0;
  std::size_t star = std::string::npos, resume = 0;
  while (ti < t.size()) {
    if (pi < p.size() && p[pi] == '*') {
      star = pi++;
      resume = ti;
    } else if (pi < p.size() && p[pi] == t[ti]) {
      ++pi;
      ++ti;
    } else if (star != std::string::npos) {
      pi = star + 1;
      ti = ++resume;
    } else {
      return false;
    }
  }
  while (pi < p.size() && p[pi] == '*') ++pi;
  return pi == p.size();
}

bool is_noise(std::string_view label, const NoisePolicy& policy) {
  if (!policy.enabled) return false;
  for (const auto& pattern : policy.patterns) {
    if (glob_match(pattern, label)) return true;
  }
  return false;
}

CategorySet apply_noise_filter(const CategorySet& categories, const NoisePolicy& policy) {
  if (!policy.enabled || policy.patterns.empty()) return categories;
  CategorySet out;
  for (const auto& [key, display] : categories) {
    if (!is_noise(display, policy)) out.insert(display);
  }
  return out;
}

}  // namespace synsem
