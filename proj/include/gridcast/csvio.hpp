#pragma once

#include <filesystem>
#include <string>

namespace gridcast {

// Shortest-faithful decimal rendering used for every numeric cell, so a
// repeated invocation reproduces files byte for byte.
std::string fmt_num(double v);

// Writes content to path atomically enough for our purposes; throws with the
// path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace gridcast
