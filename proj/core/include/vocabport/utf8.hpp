#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vocabport::utf8 {

/// One decoded code point and the number of bytes it occupied.
struct Decoded {
  char32_t cp = 0;
  std::size_t length = 0;
};

/// Decodes the code point starting at `pos`. Returns nullopt on an invalid
/// or truncated sequence (overlongs, surrogates and values above U+10FFFF
/// are rejected).
std::optional<Decoded> decode_at(std::string_view s, std::size_t pos);

/// Byte offset of the first invalid sequence, or nullopt if `s` is valid.
std::optional<std::size_t> find_invalid(std::string_view s);

inline bool is_valid(std::string_view s) { return !find_invalid(s).has_value(); }

void append(std::string& out, char32_t cp);

std::string encode(char32_t cp);

/// Decodes a valid UTF-8 string. Throws ValidationError on malformed input.
std::u32string to_u32(std::string_view s);

std::string from_u32(std::u32string_view s);

/// Splits a valid UTF-8 string into one string per code point.
std::vector<std::string> split_chars(std::string_view s);

}  // namespace vocabport::utf8
