#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emovec {

// SHA-256 (FIPS 180-4) of a byte buffer, lowercase hex.
std::string sha256_hex(std::string_view data);

// SHA-256 of a file's contents, streamed. Throws IoError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

// Standard base64 with padding.
std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view text);

// Doubles as base64 little-endian 64-bit payloads (model serialization).
std::string doubles_to_base64(std::span<const double> values);
std::vector<double> base64_to_doubles(std::string_view text);

// Shortest decimal string that round-trips through double exactly.
std::string format_double(double value);

// ASCII-only lowercase; non-ASCII bytes pass through untouched.
std::string ascii_lower(std::string_view word);

// True if the token contains no ASCII whitespace (the unigram predicate).
bool is_unigram(std::string_view token);

// Split on a single delimiter, keeping empty fields.
std::vector<std::string_view> split_on(std::string_view line, char delim);

// Whitespace-run tokenization (spaces and tabs), dropping empty fields.
std::vector<std::string_view> split_fields(std::string_view line);

// Strict parsers; nullopt on trailing garbage, empty input, or overflow.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

// Write-temp-then-rename so partially written outputs are never observed.
void atomic_write_file(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace emovec
