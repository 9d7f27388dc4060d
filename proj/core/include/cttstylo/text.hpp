#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cttstylo::text {

// Decodes UTF-8; malformed bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(char32_t cp);
std::string encode_utf8(std::u32string_view s);

// Number of code points.
std::size_t length(std::string_view s);

bool is_cjk(char32_t cp);
bool is_latin_letter(char32_t cp);
bool is_space(char32_t cp);
inline bool is_ascii_upper(char32_t cp) { return cp >= U'A' && cp <= U'Z'; }

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string> split_list(std::string_view s);  // comma or whitespace

// Strips a trailing '\r' left by CRLF files.
inline std::string_view chomp(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

// Shortest decimal representation that round-trips through strtod.
std::string format_double(double v);

// FNV-1a, stable across platforms.
std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace cttstylo::text
