#pragma once

#include <string>
#include <string_view>

namespace kgrank {

/// Whole file as a string. Throws IoError.
std::string read_file(const std::string& path);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file. Throws IoError.
void write_file_atomic(const std::string& path, std::string_view content);

} // namespace kgrank
