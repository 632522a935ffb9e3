#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace scope {

// Reads a whole file; "-" reads standard input. Throws IoError naming the path.
std::string read_file(const std::filesystem::path& path);

// Writes `contents` to a sibling temporary file and renames it over `path`, so
// readers never observe a partially written target. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace scope
