#pragma once

// Small helpers shared by the line-oriented file formats.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dprsvm::text {

/// Shortest decimal that round-trips to the same double.
std::string format_real(double value);

/// Strict decimal parse of the whole token. Returns nullopt on garbage; accepts
/// "inf"/"nan" spellings so callers can report them as non-finite.
std::optional<double> parse_real(std::string_view token);

std::optional<std::int64_t> parse_int(std::string_view token);

/// Splits on LF, dropping one trailing CR per line. A final line without LF is kept.
std::vector<std::string_view> split_lines(std::string_view bytes);

/// Splits on any run of the given delimiter characters.
std::vector<std::string_view> split_tokens(std::string_view line, std::string_view delimiters = " \t");

/// Text before the first '#', with surrounding blanks trimmed.
std::string_view strip_comment(std::string_view line);

std::string_view trim(std::string_view s);

/// Identifiers are nonempty and free of whitespace and '#'.
bool is_identifier(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace dprsvm::text
