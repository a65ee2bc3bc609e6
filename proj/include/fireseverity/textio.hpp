#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fireseverity {

// Shortest round-trip decimal form: parsing the result with parse_double
// recovers the identical bit pattern. All text artifacts use this so that
// reruns are byte-identical and serialized models reload exactly.
std::string format_double(double v);
std::string format_float(float v);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);

// One CSV record; no quoting (none of the artifact's formats need it).
std::string csv_join(const std::vector<std::string>& fields);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);

} // namespace fireseverity
