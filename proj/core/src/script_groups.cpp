#include "vocabport/script_groups.hpp"

#include <array>
#include <cmath>
#include <string>

#include "vocabport/byte_level.hpp"
#include "vocabport/error.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

namespace {

struct Range {
  char32_t lo;
  char32_t hi;
  Script script;
};

// Letter ranges. Holes for digits and punctuation inside a block are listed
// separately in kNonLetters and checked first.
constexpr Range kLetters[] = {
    {U'A', U'Z', Script::kLatin},
    {U'a', U'z', Script::kLatin},
    {0x00AA, 0x00AA, Script::kLatin},
    {0x00BA, 0x00BA, Script::kLatin},
    {0x00C0, 0x00D6, Script::kLatin},
    {0x00D8, 0x00F6, Script::kLatin},
    {0x00F8, 0x024F, Script::kLatin},
    {0x0370, 0x03FF, Script::kGreek},
    {0x0400, 0x052F, Script::kCyrillic},
    {0x0591, 0x05F2, Script::kHebrew},
    {0x0600, 0x06FF, Script::kArabic},
    {0x0750, 0x077F, Script::kArabic},
    {0x08A0, 0x08FF, Script::kArabic},
    {0x0900, 0x097F, Script::kDevanagari},
    {0x1100, 0x11FF, Script::kHangul},
    {0x1E00, 0x1EFF, Script::kLatin},
    {0x1F00, 0x1FFF, Script::kGreek},
    {0x2C60, 0x2C7F, Script::kLatin},
    {0x2DE0, 0x2DFF, Script::kCyrillic},
    {0x2E80, 0x2FDF, Script::kHan},
    {0x3005, 0x3005, Script::kHan},
    {0x3007, 0x3007, Script::kHan},
    {0x3021, 0x3029, Script::kHan},
    {0x3038, 0x303B, Script::kHan},
    {0x3041, 0x309F, Script::kHiragana},
    {0x30A0, 0x30FF, Script::kKatakana},
    {0x3131, 0x318E, Script::kHangul},
    {0x31F0, 0x31FF, Script::kKatakana},
    {0x3400, 0x4DBF, Script::kHan},
    {0x4E00, 0x9FFF, Script::kHan},
    {0xA640, 0xA69F, Script::kCyrillic},
    {0xA720, 0xA7FF, Script::kLatin},
    {0xA8E0, 0xA8FF, Script::kDevanagari},
    {0xA960, 0xA97F, Script::kHangul},
    {0xAC00, 0xD7FF, Script::kHangul},
    {0xF900, 0xFAFF, Script::kHan},
    {0xFB1D, 0xFB4F, Script::kHebrew},
    {0xFB50, 0xFDFF, Script::kArabic},
    {0xFE70, 0xFEFF, Script::kArabic},
    {0xFF21, 0xFF3A, Script::kLatin},
    {0xFF41, 0xFF5A, Script::kLatin},
    {0xFF66, 0xFF9D, Script::kKatakana},
    {0xFFA0, 0xFFDC, Script::kHangul},
    {0x1B001, 0x1B11F, Script::kHiragana},
    {0x20000, 0x2FA1F, Script::kHan},
};

// Digits, punctuation and shared marks that sit inside letter blocks.
constexpr std::array<std::pair<char32_t, char32_t>, 20> kNonLetters = {{
    {0x0374, 0x0375},
    {0x037E, 0x037E},
    {0x0384, 0x0385},
    {0x0387, 0x0387},
    {0x05BE, 0x05BE},
    {0x05C0, 0x05C0},
    {0x05C3, 0x05C3},
    {0x05C6, 0x05C6},
    {0x0600, 0x060F},  // number signs, Arabic comma, date separator...
    {0x061B, 0x061F},
    {0x0660, 0x066D},  // Arabic-Indic digits, percent, separators
    {0x06D4, 0x06D4},
    {0x06DD, 0x06DE},
    {0x06F0, 0x06F9},
    {0x0964, 0x096F},  // danda, double danda, Devanagari digits
    {0x0970, 0x0970},
    {0x30A0, 0x30A0},
    {0x30FB, 0x30FC},  // katakana middle dot, prolonged sound mark
    {0xFD3E, 0xFD3F},
    {0xFF70, 0xFF70},
}};

std::size_t script_index(Script s) { return static_cast<std::size_t>(s); }

constexpr std::string_view kGpt2Marker = "\xC4\xA0";
constexpr std::string_view kSentencePieceMarker = "\xE2\x96\x81";

}  // namespace

std::string_view to_string(Script s) {
  switch (s) {
    case Script::kLatin: return "Latin";
    case Script::kCyrillic: return "Cyrillic";
    case Script::kGreek: return "Greek";
    case Script::kArabic: return "Arabic";
    case Script::kHebrew: return "Hebrew";
    case Script::kDevanagari: return "Devanagari";
    case Script::kHiragana: return "Hiragana";
    case Script::kKatakana: return "Katakana";
    case Script::kHan: return "Han";
    case Script::kHangul: return "Hangul";
    case Script::kCommon: return "Common";
    case Script::kUnknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Position p) {
  return p == Position::kWordInitial ? "word-initial" : "word-internal";
}

Script char_script(char32_t cp) {
  for (auto [lo, hi] : kNonLetters) {
    if (cp >= lo && cp <= hi) return Script::kCommon;
  }
  for (const auto& r : kLetters) {
    if (cp >= r.lo && cp <= r.hi) return r.script;
  }
  return Script::kCommon;
}

ScriptGroup classify_token(std::string_view token, const TokenConventions& conventions) {
  ScriptGroup g{Script::kUnknown, Position::kWordInternal};

  std::string text;
  if (conventions.encoding == TokenEncoding::kByteLevel) {
    auto raw = byte_level::decode(token);
    if (!raw || !utf8::is_valid(*raw)) return g;
    text = std::move(*raw);
    if (!text.empty() && text.front() == ' ') {
      g.position = Position::kWordInitial;
      text.erase(0, 1);
    }
  } else {
    if (!utf8::is_valid(token)) return g;
    std::string_view body = token;
    for (auto marker : {kGpt2Marker, kSentencePieceMarker}) {
      if (body.starts_with(marker)) {
        g.position = Position::kWordInitial;
        body.remove_prefix(marker.size());
        break;
      }
    }
    text = std::string(body);
  }

  std::array<std::size_t, static_cast<std::size_t>(Script::kUnknown) + 1> votes{};
  for (char32_t cp : utf8::to_u32(text)) ++votes[script_index(char_script(cp))];

  std::size_t best = 0;
  Script winner = Script::kUnknown;
  bool tied = false;
  for (std::size_t i = 0; i < script_index(Script::kCommon); ++i) {
    if (votes[i] > best) {
      best = votes[i];
      winner = static_cast<Script>(i);
      tied = false;
    } else if (votes[i] == best && best > 0) {
      tied = true;
    }
  }
  g.script = (best == 0 || tied) ? Script::kUnknown : winner;
  return g;
}

std::map<ScriptGroup, GroupStats> group_statistics(const Vocabulary& vocab,
                                                   const EmbeddingMatrix& emb,
                                                   const TokenConventions& conventions) {
  if (emb.rows() != vocab.size()) {
    throw ValidationError("group_statistics: matrix has " + std::to_string(emb.rows()) +
                          " rows for " + std::to_string(vocab.size()) + " tokens");
  }
  const std::size_t cols = emb.cols();
  std::vector<ScriptGroup> groups(vocab.size());
  std::map<ScriptGroup, GroupStats> stats;
  for (TokenId id = 0; id < vocab.size(); ++id) {
    groups[id] = classify_token(vocab.token(id), conventions);
    auto& s = stats[groups[id]];
    if (s.count == 0) {
      s.group = groups[id];
      s.mean.assign(cols, 0.0);
      s.stddev.assign(cols, 0.0);
    }
    ++s.count;
    const auto r = emb.row(id);
    for (std::size_t c = 0; c < cols; ++c) s.mean[c] += r[c];
  }
  for (auto& [g, s] : stats) {
    for (auto& m : s.mean) m /= static_cast<double>(s.count);
  }
  // second pass for the variance keeps it stable for large offsets
  for (TokenId id = 0; id < vocab.size(); ++id) {
    auto& s = stats[groups[id]];
    const auto r = emb.row(id);
    for (std::size_t c = 0; c < cols; ++c) {
      const double d = r[c] - s.mean[c];
      s.stddev[c] += d * d;
    }
  }
  for (auto& [g, s] : stats) {
    for (auto& v : s.stddev) v = std::sqrt(v / static_cast<double>(s.count));
  }
  return stats;
}

}  // namespace vocabport
