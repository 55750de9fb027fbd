#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "synsem/category_set.hpp"

namespace synsem {

// Category labels that recur across unrelated keywords and carry no
// scientific meaning (people, albums, films).
const std::vector<std::string>& default_noise_patterns();

struct NoisePolicy {
  std::vector<std::string> patterns = default_noise_patterns();
  bool enabled = true;

  bool operator==(const NoisePolicy&) const = default;
};

// Case-insensitive glob where '*' matches any run of characters, including
// none. Every other character is literal.
bool glob_match(std::string_view pattern, std::string_view text);

bool is_noise(std::string_view label, const NoisePolicy& policy);

// Removes exactly the labels matched by at least one pattern. Identity when
// the policy is disabled. Idempotent.
CategorySet apply_noise_filter(const CategorySet& categories, const NoisePolicy& policy);

}  // namespace synsem
