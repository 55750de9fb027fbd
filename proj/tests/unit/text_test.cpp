#include <doctest.h>

#include "synsem/hash.hpp"
#include "synsem/text.hpp"
#include "synsem/timestamp.hpp"

using namespace synsem;

TEST_CASE("normalize_keyword canonicalizes whitespace and case") {
  CHECK(normalize_keyword("  Dark   Matter ") == "dark matter");
  CHECK(normalize_keyword("celestial mechanics") == "celestial mechanics");
  CHECK(normalize_keyword("") == "");
  CHECK(normalize_keyword(" \t\n ") == "");
  CHECK(normalize_keyword("Flapping\tFlight\r\n") == "flapping flight");
}

TEST_CASE("normalize_keyword is idempotent") {
  for (const char* raw : {"  A  b ", "X-Ray  Diffraction", "ü  Über", "\tq"}) {
    const auto once = normalize_keyword(raw);
    CHECK(normalize_keyword(once) == once);
  }
}

TEST_CASE("is_normalized rejects empty and non-canonical strings") {
  CHECK(is_normalized("dark matter"));
  CHECK_FALSE(is_normalized(""));
  CHECK_FALSE(is_normalized("Dark matter"));
  CHECK_FALSE(is_normalized("dark  matter"));
  CHECK_FALSE(is_normalized(" dark"));
}

TEST_CASE("utf8_length counts code points") {
  CHECK(utf8_length("x") == 1);
  CHECK(utf8_length("ü") == 1);
  CHECK(utf8_length("über") == 4);
}

TEST_CASE("sha256_hex matches the standard test vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("").size() == 64);
}

TEST_CASE("iso8601 timestamps round-trip") {
  const auto t = from_iso8601("2026-01-01T00:00:00Z");
  REQUIRE(t);
  CHECK(to_iso8601(*t) == "2026-01-01T00:00:00Z");
  CHECK(std::chrono::system_clock::to_time_t(*t) == 1767225600);
  CHECK_FALSE(from_iso8601("2026-01-01 00:00:00"));
  CHECK_FALSE(from_iso8601("yesterday"));
}
