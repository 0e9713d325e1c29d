#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "vocabport/embedding_matrix.hpp"
#include "vocabport/vocabulary.hpp"

namespace vocabport {

/// Writing systems recognised by block range. kCommon marks non-letter
/// characters (digits, punctuation, symbols, unlisted scripts) and never
/// wins a token-level vote; kUnknown is the token-level "no decision" label.
enum class Script : std::uint8_t {
  kLatin,
  kCyrillic,
  kGreek,
  kArabic,
  kHebrew,
  kDevanagari,
  kHiragana,
  kKatakana,
  kHan,
  kHangul,
  kCommon,
  kUnknown,
};

enum class Position : std::uint8_t { kWordInitial, kWordInternal };

struct ScriptGroup {
  Script script = Script::kUnknown;
  Position position = Position::kWordInternal;
  friend auto operator<=>(const ScriptGroup&, const ScriptGroup&) = default;
};

std::string_view to_string(Script s);
std::string_view to_string(Position p);

/// How vocabulary strings encode text.
enum class TokenEncoding : std::uint8_t {
  kText,       // plain UTF-8; a leading "Ġ" or "▁" marks a word start
  kByteLevel,  // GPT-2 byte-mapped; decoded first, a leading space marks a word start
};

struct TokenConventions {
  TokenEncoding encoding = TokenEncoding::kText;
};

/// Script of one code point; kCommon for anything that is not a letter of a
/// listed script.
Script char_script(char32_t cp);

/// Strips the word-boundary marker to set the position, then assigns the
/// majority script over letter characters. No letters, a tied vote, or an
/// undecodable byte-level token give kUnknown.
ScriptGroup classify_token(std::string_view token, const TokenConventions& conventions = {});

struct GroupStats {
  ScriptGroup group;
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> stddev;  // population (divide by count)
};

/// Per-(script, position) statistics of `emb` rows. Every group with at least
/// one member appears, kUnknown included. Throws ValidationError when
/// emb.rows() != vocab.size().
std::map<ScriptGroup, GroupStats> group_statistics(const Vocabulary& vocab,
                                                   const EmbeddingMatrix& emb,
                                                   const TokenConventions& conventions = {});

}  // namespace vocabport
