#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vocabport::byte_level {

/// GPT-2 byte-to-unicode table: printable Latin-1 bytes map to themselves,
/// the remaining 68 bytes map to U+0100.. in byte order (so ' ' -> 'Ġ').
char32_t byte_to_char(std::uint8_t b);

/// Inverse of byte_to_char; nullopt for code points outside the table.
std::optional<std::uint8_t> char_to_byte(char32_t cp);

/// Maps every byte of `raw` through the table; the result is valid UTF-8.
std::string encode(std::string_view raw);

/// Inverts encode. nullopt if `mapped` is not valid UTF-8 or contains a
/// character outside the table. The result may itself be invalid UTF-8.
std::optional<std::string> decode(std::string_view mapped);

}  // namespace vocabport::byte_level
