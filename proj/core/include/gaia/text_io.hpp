#pragma once

// Small text helpers shared by the file formats (CSV, config, shape literals).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gaia::text {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);
std::uint64_t parse_uint(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace gaia::text
