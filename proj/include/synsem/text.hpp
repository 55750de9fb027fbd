#pragma once

#include <string>
#include <string_view>

namespace synsem {

// Trim, collapse internal whitespace runs to one space, ASCII-lowercase.
// An empty result means the keyword is unusable.
std::string normalize_keyword(std::string_view raw);

// ASCII case folding used for every category label comparison.
std::string case_fold(std::string_view s);

bool is_normalized(std::string_view keyword);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

}  // namespace synsem
