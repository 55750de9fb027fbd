#include <doctest.h>

#include <fnmatch.h>

#include <random>

#include "synsem/noise.hpp"

using namespace synsem;

namespace {

NoisePolicy only(std::vector<std::string> patterns) {
  NoisePolicy p;
  p.patterns = std::move(patterns);
  return p;
}

}  // namespace

TEST_CASE("noise filter removes exactly the matched labels") {
  CHECK(apply_noise_filter({"living people", "celestial mechanics"}, only({"living people"})) ==
        CategorySet{"celestial mechanics"});
  CHECK(apply_noise_filter({"Rock albums", "Aerodynamics"}, only({"*album*"})) == CategorySet{"Aerodynamics"});
  CHECK(apply_noise_filter({"Optics", "Living people"}, only({})) == CategorySet{"Optics", "Living people"});
}

TEST_CASE("noise matching is case-insensitive") {
  CHECK(apply_noise_filter({"LIVING PEOPLE", "Optics"}, only({"living people"})) == CategorySet{"Optics"});
  CHECK(apply_noise_filter({"American_Singer"}, only({"*_SINGER"})).empty());
}

TEST_CASE("a disabled policy is the identity") {
  NoisePolicy p = only({"*"});
  p.enabled = false;
  const CategorySet input{"Living people", "American films"};
  CHECK(apply_noise_filter(input, p) == input);
}

TEST_CASE("default patterns cover the recurring people, album and film labels") {
  const NoisePolicy defaults;
  for (const char* noisy : {"Living people", "American_singer", "Progressive_rock_album", "Canadian singers",
                            "Hip hop albums", "English-language films", "French-language films", "American films"}) {
    CHECK_MESSAGE(is_noise(noisy, defaults), noisy);
  }
  for (const char* kept : {"Celestial mechanics", "Aerodynamics", "Singer (company)", "Album covers",
                           "Films about physicists"}) {
    CHECK_MESSAGE(!is_noise(kept, defaults), kept);
  }
}

TEST_CASE("glob_match edge cases") {
  CHECK(glob_match("*", ""));
  CHECK(glob_match("", ""));
  CHECK_FALSE(glob_match("", "a"));
  CHECK(glob_match("a*", "a"));
  CHECK(glob_match("*a*b*", "xxaxxbxx"));
  CHECK_FALSE(glob_match("*a*b", "xxaxxbxxc"));
  CHECK(glob_match("**x**", "x"));
  CHECK(glob_match("a?c", "a?c"));  // '?' is literal
  CHECK_FALSE(glob_match("a?c", "abc"));
}

TEST_CASE("glob_match agrees with fnmatch on star-only patterns") {
  std::mt19937_64 rng(20260101);
  const std::string alphabet = "abAB_ ";
  auto random_string = [&](int max_len, bool stars) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - (stars ? 0 : 1));
    std::string s;
    for (int i = len(rng); i > 0; --i) {
      const auto idx = ch(rng);
      s.push_back(idx == alphabet.size() ? '*' : alphabet[idx]);
    }
    return s;
  };
  int mismatches = 0;
  for (int i = 0; i < 5000; ++i) {
    const auto pattern = random_string(6, true);
    const auto text = random_string(8, false);
    const bool expected = ::fnmatch(pattern.c_str(), text.c_str(), FNM_CASEFOLD) == 0;
    if (glob_match(pattern, text) != expected) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("noise filtering is idempotent") {
  const NoisePolicy defaults;
  const CategorySet input{"Living people", "Optics", "Rock_album", "american FILMS", "Aerodynamics"};
  const auto once = apply_noise_filter(input, defaults);
  CHECK(apply_noise_filter(once, defaults) == once);
  CHECK(once == CategorySet{"Optics", "Aerodynamics"});
}
