#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eegtda {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Strict: the whole string must be a number. Accepts "inf"/"-inf"/"nan".
bool parse_double(std::string_view s, double& out);

// Shortest representation that round-trips exactly.
std::string format_double(double x);

// Shortest "%g"-style text of at most `width` characters.
std::string format_compact(double x, std::size_t width);

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace eegtda
