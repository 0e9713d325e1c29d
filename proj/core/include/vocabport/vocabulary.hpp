#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vocabport {

using TokenId = std::size_t;

/// Ordered token strings with a dense 0-based id index. Immutable once built.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Ids follow vector order. Throws ValidationError on a duplicate token.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  const std::string& token(TokenId id) const;
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  std::optional<TokenId> find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId, StringHash, std::equal_to<>> index_;
};

enum class VocabFormat {
  kJsonMap,       // {"token": id, ...}, ids dense and 0-based
  kLinePerToken,  // one UTF-8 token per line, id = line order
  kTsvScored,     // token<TAB>score, id = line order
};

/// Parses "json-map", "line-per-token", or "tsv-scored".
VocabFormat parse_vocab_format(std::string_view name);

/// Guesses a format from the file extension: .json, .tsv, anything else is
/// line-per-token.
VocabFormat vocab_format_for_path(const std::filesystem::path& path);

Vocabulary load_vocab(const std::filesystem::path& path, VocabFormat format);

/// Parses vocabulary file contents already held in memory. `origin` names the
/// source in error messages.
Vocabulary parse_vocab(std::string_view contents, VocabFormat format,
                       std::string_view origin = "<memory>");

/// A tsv-scored vocabulary with its per-token scores kept.
struct ScoredVocabulary {
  Vocabulary vocab;
  std::vector<double> scores;
};

ScoredVocabulary load_scored_vocab(const std::filesystem::path& path);
ScoredVocabulary parse_scored_vocab(std::string_view contents,
                                    std::string_view origin = "<memory>");

/// Writes one token per line. Tokens containing '\n' are rejected.
void save_vocab_lines(const Vocabulary& vocab, const std::filesystem::path& path);

/// Writes a {"token": id} JSON object.
void save_vocab_json(const Vocabulary& vocab, const std::filesystem::path& path);

}  // namespace vocabport
