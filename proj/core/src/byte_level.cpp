#include "vocabport/byte_level.hpp"

#include <array>

#include "vocabport/utf8.hpp"

namespace vocabport::byte_level {

namespace {

struct Tables {
  std::array<char32_t, 256> forward{};
  std::array<std::int16_t, 512> inverse{};  // every mapped code point is < 512
};

constexpr bool printable(int b) {
  return (b >= '!' && b <= '~') || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE && b <= 0xFF);
}

constexpr Tables build_tables() {
  Tables t;
  for (auto& v : t.inverse) v = -1;
  char32_t next = 256;
  for (int b = 0; b < 256; ++b) {
    const char32_t cp = printable(b) ? static_cast<char32_t>(b) : next++;
    t.forward[b] = cp;
    t.inverse[cp] = static_cast<std::int16_t>(b);
  }
  return t;
}

constexpr Tables kTables = build_tables();

}  // namespace

char32_t byte_to_char(std::uint8_t b) { return kTables.forward[b]; }

std::optional<std::uint8_t> char_to_byte(char32_t cp) {
  if (cp >= kTables.inverse.size() || kTables.inverse[cp] < 0) return std::nullopt;
  return static_cast<std::uint8_t>(kTables.inverse[cp]);
}

std::string encode(std::string_view raw) {
  std::string out;
  out.reserve(raw.size() * 2);
  for (char c : raw) utf8::append(out, byte_to_char(static_cast<std::uint8_t>(c)));
  return out;
}

std::optional<std::string> decode(std::string_view mapped) {
  std::string out;
  out.reserve(mapped.size());
  std::size_t pos = 0;
  while (pos < mapped.size()) {
    auto d = utf8::decode_at(mapped, pos);
    if (!d) return std::nullopt;
    auto b = char_to_byte(d->cp);
    if (!b) return std::nullopt;
    out.push_back(static_cast<char>(*b));
    pos += d->length;
  }
  return out;
}

}  // namespace vocabport::byte_level
