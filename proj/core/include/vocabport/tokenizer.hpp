#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "vocabport/vocabulary.hpp"

namespace vocabport {

// ---------------------------------------------------------------------------
// Pretokenization
//
// Text is cut into pieces with the GPT-2 boundary rule, tried in this order
// at each position:
//   1. the contractions 's 't 're 've 'm 'll 'd
//   2. an optional single ' ' followed by a run of letters
//   3. an optional single ' ' followed by a run of numbers
//   4. an optional single ' ' followed by a run of other characters
//   5. a whitespace run that is not followed by a non-space (all of it at the
//      end of the text, otherwise all but its last character)
//   6. any remaining whitespace run
// Character classes come from char_class below. Combining marks count as
// letters so that Devanagari or Arabic words stay whole. Bytes that are not
// valid UTF-8 are single "other" characters.
// ---------------------------------------------------------------------------

enum class CharClass : std::uint8_t { kLetter, kNumber, kSpace, kOther };

CharClass char_class(char32_t cp);

/// Pieces of `text` as raw byte substrings; their concatenation is `text`.
std::vector<std::string> split_pretokens(std::string_view text);

/// split_pretokens followed by the GPT-2 byte-to-unicode mapping.
std::vector<std::string> byte_level_pretokenize(std::string_view text);

// ---------------------------------------------------------------------------
// Byte-level BPE
// ---------------------------------------------------------------------------

using MergeRule = std::pair<std::string, std::string>;

class BpeSpec {
 public:
  /// Merge rank = list position. Throws ValidationError when a merge result
  /// is missing from the vocabulary or a merge is listed twice.
  static BpeSpec create(Vocabulary vocab, std::vector<MergeRule> merges, bool byte_level = true);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  const std::vector<MergeRule>& merges() const noexcept { return merges_; }
  bool byte_level() const noexcept { return byte_level_; }

  /// Rank of merging (left, right), or -1 when no such merge exists.
  std::int64_t rank(std::string_view left, std::string_view right) const;

 private:
  Vocabulary vocab_;
  std::vector<MergeRule> merges_;
  bool byte_level_ = true;
  std::unordered_map<std::string, std::int64_t> ranks_;  // key: left + '\0' + right
};

/// Ids of the BPE encoding of `text`. Within each pretoken the lowest-rank
/// adjacent pair is merged first (leftmost on ties). Final symbols missing
/// from the vocabulary are emitted one character at a time; a character that
/// is itself missing raises ValidationError (malformed spec).
std::vector<TokenId> bpe_encode(const BpeSpec& spec, std::string_view text);

/// Token strings of the encoding, before id lookup.
std::vector<std::string> bpe_encode_pieces(const BpeSpec& spec, std::string_view text);

/// Concatenates token strings and, for byte-level specs, inverts the byte map.
std::string bpe_decode(const BpeSpec& spec, const std::vector<TokenId>& ids);

/// Merges file: "left right" per line; an optional first line starting with
/// '#' is a header.
std::vector<MergeRule> parse_merges(std::string_view contents, std::string_view origin = "<memory>");

BpeSpec load_bpe_spec(const std::filesystem::path& vocab_json,
                      const std::filesystem::path& merges_txt, bool byte_level = true);

// ---------------------------------------------------------------------------
// Unigram
// ---------------------------------------------------------------------------

class UnigramSpec {
 public:
  /// `unk_token` must be in `vocab`. Throws ValidationError on a length
  /// mismatch or a non-finite log-probability or penalty.
  static UnigramSpec create(Vocabulary vocab, std::vector<double> log_probs,
                            std::string unk_token = "<unk>", double unk_penalty = -10.0,
                            bool add_dummy_prefix = false);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  const std::vector<double>& log_probs() const noexcept { return log_probs_; }
  const std::string& unk_token() const noexcept { return unk_token_; }
  TokenId unk_id() const noexcept { return unk_id_; }
  double unk_penalty() const noexcept { return unk_penalty_; }
  bool add_dummy_prefix() const noexcept { return add_dummy_prefix_; }
  std::size_t max_token_chars() const noexcept { return max_token_chars_; }

 private:
  Vocabulary vocab_;
  std::vector<double> log_probs_;
  std::string unk_token_;
  TokenId unk_id_ = 0;
  double unk_penalty_ = -10.0;
  bool add_dummy_prefix_ = false;
  std::size_t max_token_chars_ = 0;
};

/// Splits text for Unigram segmentation: each whitespace character becomes
/// "▁" and a new piece starts at every "▁". With `add_dummy_prefix`, a "▁"
/// is prepended to non-empty text that does not start with whitespace.
std::vector<std::string> unigram_pretokenize(std::string_view text, bool add_dummy_prefix);

struct UnigramSegmentation {
  std::vector<TokenId> ids;
  double score = 0.0;  // sum of log-probs, unk_penalty per unknown character
};

/// Viterbi segmentation of every pretoken. Ties on score go to fewer
/// tokens, then to the longer first token (leftmost-longest). A character
/// with no single-character token may be covered by an unk edge.
UnigramSegmentation unigram_segment(const UnigramSpec& spec, std::string_view text);

std::vector<TokenId> unigram_encode(const UnigramSpec& spec, std::string_view text);

struct UnigramLoadOptions {
  std::string unk_token = "<unk>";
  double unk_penalty = -10.0;
  bool add_dummy_prefix = false;
};

/// TSV "token<TAB>logprob". If the unk token is absent it is appended with
/// score = unk_penalty.
UnigramSpec load_unigram_spec(const std::filesystem::path& tsv,
                              const UnigramLoadOptions& options = {});

// ---------------------------------------------------------------------------
// Either family
// ---------------------------------------------------------------------------

using TokenizerSpec = std::variant<BpeSpec, UnigramSpec>;

std::vector<TokenId> encode(const TokenizerSpec& spec, std::string_view text);

std::size_t count_tokens(const TokenizerSpec& spec, std::string_view text);

const Vocabulary& spec_vocab(const TokenizerSpec& spec);

/// Reads a Hugging Face tokenizer.json holding a BPE or Unigram model.
/// Only the vocabulary, merges/scores and unk token are used; normalizers and
/// special-token handling are ignored.
TokenizerSpec load_tokenizer_json(const std::filesystem::path& path);

}  // namespace vocabport
