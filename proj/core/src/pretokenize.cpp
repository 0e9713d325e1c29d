#include <array>

#include "vocabport/byte_level.hpp"
#include "vocabport/script_groups.hpp"
#include "vocabport/tokenizer.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

namespace {

struct CpRange {
  char32_t lo;
  char32_t hi;
};

constexpr CpRange kSpaces[] = {
    {0x09, 0x0D}, {0x20, 0x20}, {0x85, 0x85}, {0xA0, 0xA0}, {0x1680, 0x1680},
    {0x2000, 0x200A}, {0x2028, 0x2029}, {0x202F, 0x202F}, {0x205F, 0x205F}, {0x3000, 0x3000},
};

constexpr CpRange kNumbers[] = {
    {'0', '9'},       {0x00B2, 0x00B3}, {0x00B9, 0x00B9}, {0x00BC, 0x00BE},
    {0x0660, 0x0669}, {0x06F0, 0x06F9}, {0x0966, 0x096F}, {0x2070, 0x2070},
    {0x2074, 0x2079}, {0x2080, 0x2089}, {0x2150, 0x2189}, {0x2460, 0x249B},
    {0x3007, 0x3007}, {0x3021, 0x3029}, {0xFF10, 0xFF19},
};

// Punctuation, symbols, controls and format characters outside ASCII.
constexpr CpRange kOthers[] = {
    {0x0000, 0x001F}, {0x007F, 0x00A9}, {0x00AB, 0x00B4}, {0x00B6, 0x00B9},
    {0x00BB, 0x00BF}, {0x00D7, 0x00D7}, {0x00F7, 0x00F7}, {0x02C2, 0x02C5},
    {0x02D2, 0x02DF}, {0x037E, 0x037E}, {0x0387, 0x0387}, {0x055A, 0x055F},
    {0x0589, 0x058A}, {0x05BE, 0x05BE}, {0x05C0, 0x05C0}, {0x05C3, 0x05C3},
    {0x05C6, 0x05C6}, {0x05F3, 0x05F4}, {0x0600, 0x060F}, {0x061B, 0x061F},
    {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x06DD, 0x06DE}, {0x06E9, 0x06E9},
    {0x0964, 0x0965}, {0x0970, 0x0970}, {0x0E3F, 0x0E3F}, {0x0E4F, 0x0E4F},
    {0x0E5A, 0x0E5B}, {0x200B, 0x200F}, {0x2010, 0x206F}, {0x20A0, 0x20CF},
    {0x2100, 0x214F}, {0x2190, 0x245F}, {0x249C, 0x2BFF}, {0x2E00, 0x2E7F},
    {0x3001, 0x3004}, {0x3008, 0x3020}, {0x3030, 0x3030}, {0x303D, 0x303F},
    {0x30A0, 0x30A0}, {0x30FB, 0x30FB}, {0xD800, 0xDFFF}, {0xE000, 0xF8FF},
    {0xFD3E, 0xFD3F}, {0xFE00, 0xFE0F}, {0xFE10, 0xFE1F}, {0xFE30, 0xFE6F},
    {0xFEFF, 0xFEFF}, {0xFF01, 0xFF0F}, {0xFF1A, 0xFF20}, {0xFF3B, 0xFF40},
    {0xFF5B, 0xFF65}, {0xFFF0, 0xFFFF}, {0x1F000, 0x1FAFF}, {0xE0000, 0xE007F},
};

template <std::size_t N>
bool in_ranges(char32_t cp, const CpRange (&ranges)[N]) {
  for (const auto& r : ranges) {
    if (cp >= r.lo && cp <= r.hi) return true;
  }
  return false;
}

struct ScannedChar {
  std::size_t offset;
  std::size_t length;
  char32_t cp;
  CharClass cls;
};

std::vector<ScannedChar> scan(std::string_view text) {
  std::vector<ScannedChar> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (auto d = utf8::decode_at(text, pos)) {
      out.push_back({pos, d->length, d->cp, char_class(d->cp)});
      pos += d->length;
    } else {
      out.push_back({pos, 1, 0xFFFD, CharClass::kOther});
      pos += 1;
    }
  }
  return out;
}

/// Length in characters of a contraction starting at i, or 0.
std::size_t contraction_at(const std::vector<ScannedChar>& c, std::size_t i) {
  if (c[i].cp != U'\'' || i + 1 >= c.size()) return 0;
  const char32_t a = c[i + 1].cp;
  if (a == U's' || a == U't' || a == U'm' || a == U'd') return 2;
  if (i + 2 < c.size()) {
    const char32_t b = c[i + 2].cp;
    if ((a == U'r' && b == U'e') || (a == U'v' && b == U'e') || (a == U'l' && b == U'l')) {
      return 3;
    }
  }
  return 0;
}

}  // namespace

CharClass char_class(char32_t cp) {
  if (cp < 0x80) {
    if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return CharClass::kLetter;
    if (cp >= '0' && cp <= '9') return CharClass::kNumber;
    if (cp == ' ' || (cp >= 0x09 && cp <= 0x0D)) return CharClass::kSpace;
    return CharClass::kOther;
  }
  if (in_ranges(cp, kSpaces)) return CharClass::kSpace;
  if (in_ranges(cp, kNumbers)) return CharClass::kNumber;
  if (char_script(cp) != Script::kCommon) return CharClass::kLetter;
  if (in_ranges(cp, kOthers)) return CharClass::kOther;
  return CharClass::kLetter;
}

std::vector<std::string> split_pretokens(std::string_view text) {
  const auto chars = scan(text);
  const std::size_t n = chars.size();
  std::vector<std::string> out;

  auto emit = [&](std::size_t begin, std::size_t end) {
    const std::size_t lo = chars[begin].offset;
    const std::size_t hi = end < n ? chars[end].offset : text.size();
    out.emplace_back(text.substr(lo, hi - lo));
  };

  std::size_t i = 0;
  while (i < n) {
    if (auto len = contraction_at(chars, i)) {
      emit(i, i + len);
      i += len;
      continue;
    }

    std::size_t start = i;
    if (chars[i].cp == U' ' && i + 1 < n && chars[i + 1].cls != CharClass::kSpace) start = i + 1;
    if (chars[start].cls != CharClass::kSpace) {
      const CharClass cls = chars[start].cls;
      std::size_t j = start + 1;
      while (j < n && chars[j].cls == cls) ++j;
      emit(i, j);
      i = j;
      continue;
    }

    std::size_t k = i + 1;
    while (k < n && chars[k].cls == CharClass::kSpace) ++k;
    if (k < n && k - i >= 2) {
      emit(i, k - 1);
      i = k - 1;
    } else {
      emit(i, k);
      i = k;
    }
  }
  return out;
}

std::vector<std::string> byte_level_pretokenize(std::string_view text) {
  auto pieces = split_pretokens(text);
  for (auto& p : pieces) p = byte_level::encode(p);
  return pieces;
}

std::vector<std::string> unigram_pretokenize(std::string_view text, bool add_dummy_prefix) {
  static const std::string kMeta = "\xE2\x96\x81";
  std::vector<std::string> out;
  const auto chars = scan(text);
  std::string current;
  if (add_dummy_prefix && !chars.empty() && chars.front().cls != CharClass::kSpace) {
    current = kMeta;
  }
  for (const auto& c : chars) {
    if (c.cls == CharClass::kSpace) {
      if (!current.empty()) out.push_back(std::move(current));
      current = kMeta;
    } else {
      current.append(text.substr(c.offset, c.length));
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace vocabport
