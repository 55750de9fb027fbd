#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace synsem {

// "YYYY-MM-DDTHH:MM:SSZ", UTC, second precision.
std::string to_iso8601(std::chrono::system_clock::time_point t);
std::optional<std::chrono::system_clock::time_point> from_iso8601(std::string_view s);

}  // namespace synsem
