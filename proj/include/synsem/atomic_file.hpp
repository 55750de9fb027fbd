#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace synsem {

// Write `content` to a uniquely named sibling temp file, then rename it over
// `path`. Readers never observe a partially written file, and concurrent
// writers to the same path resolve as last-write-wins.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace synsem
