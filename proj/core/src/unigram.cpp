#include <cmath>

#include "vocabport/error.hpp"
#include "vocabport/tokenizer.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

UnigramSpec UnigramSpec::create(Vocabulary vocab, std::vector<double> log_probs,
                                std::string unk_token, double unk_penalty,
                                bool add_dummy_prefix) {
  if (log_probs.size() != vocab.size()) {
    throw ValidationError("unigram spec has " + std::to_string(log_probs.size()) +
                          " log-probs for " + std::to_string(vocab.size()) + " tokens");
  }
  for (std::size_t i = 0; i < log_probs.size(); ++i) {
    if (!std::isfinite(log_probs[i])) {
      throw ValidationError("non-finite log-prob for token '" + vocab.token(i) + "'");
    }
  }
  if (!std::isfinite(unk_penalty)) throw ValidationError("unk penalty must be finite");
  auto unk = vocab.find(unk_token);
  if (!unk) throw ValidationError("unk token '" + unk_token + "' is not in the vocabulary");

  UnigramSpec spec;
  for (TokenId id = 0; id < vocab.size(); ++id) {
    if (id == *unk) continue;
    std::size_t chars = 0;
    const auto& tok = vocab.token(id);
    for (std::size_t pos = 0; pos < tok.size(); ++chars) {
      auto d = utf8::decode_at(tok, pos);
      pos += d ? d->length : 1;
    }
    spec.max_token_chars_ = std::max(spec.max_token_chars_, chars);
  }
  spec.vocab_ = std::move(vocab);
  spec.log_probs_ = std::move(log_probs);
  spec.unk_token_ = std::move(unk_token);
  spec.unk_id_ = *unk;
  spec.unk_penalty_ = unk_penalty;
  spec.add_dummy_prefix_ = add_dummy_prefix;
  return spec;
}

namespace {

struct Node {
  double score = 0.0;
  std::size_t count = 0;
  std::size_t first_len = 0;  // characters in the first token of the best suffix path
  TokenId first_id = 0;
};

/// True when candidate (score, count, len) beats the current best.
bool better(double score, std::size_t count, std::size_t len, const Node& best) {
  if (score != best.score) return score > best.score;
  if (count != best.count) return count < best.count;
  return len > best.first_len;
}

void segment_piece(const UnigramSpec& spec, std::string_view piece, UnigramSegmentation& out) {
  std::vector<std::size_t> offsets;
  for (std::size_t pos = 0; pos < piece.size();) {
    offsets.push_back(pos);
    auto d = utf8::decode_at(piece, pos);
    pos += d ? d->length : 1;
  }
  const std::size_t n = offsets.size();
  offsets.push_back(piece.size());

  // best[i] is the best segmentation of the suffix starting at character i.
  // Building it right-to-left makes the first-token-length tie-break exact.
  std::vector<Node> best(n + 1);
  for (std::size_t i = n; i-- > 0;) {
    Node node;
    bool have = false;
    bool single_char_token = false;
    const std::size_t max_len = std::min(spec.max_token_chars(), n - i);
    for (std::size_t len = 1; len <= max_len; ++len) {
      auto sub = piece.substr(offsets[i], offsets[i + len] - offsets[i]);
      auto id = spec.vocab().find(sub);
      if (!id || *id == spec.unk_id()) continue;
      if (len == 1) single_char_token = true;
      const auto& rest = best[i + len];
      const double score = spec.log_probs()[*id] + rest.score;
      const std::size_t count = rest.count + 1;
      if (!have || better(score, count, len, node)) {
        node = {score, count, len, *id};
        have = true;
      }
    }
    if (!single_char_token) {
      const auto& rest = best[i + 1];
      const double score = spec.unk_penalty() + rest.score;
      const std::size_t count = rest.count + 1;
      if (!have || better(score, count, 1, node)) {
        node = {score, count, 1, spec.unk_id()};
        have = true;
      }
    }
    best[i] = node;
  }

  out.score += best[0].score;
  for (std::size_t i = 0; i < n; i += best[i].first_len) out.ids.push_back(best[i].first_id);
}

}  // namespace

UnigramSegmentation unigram_segment(const UnigramSpec& spec, std::string_view text) {
  UnigramSegmentation out;
  for (const auto& piece : unigram_pretokenize(text, spec.add_dummy_prefix())) {
    segment_piece(spec, piece, out);
  }
  return out;
}

std::vector<TokenId> unigram_encode(const UnigramSpec& spec, std::string_view text) {
  return unigram_segment(spec, text).ids;
}

UnigramSpec load_unigram_spec(const std::filesystem::path& tsv,
                              const UnigramLoadOptions& options) {
  auto scored = load_scored_vocab(tsv);
  if (!scored.vocab.contains(options.unk_token)) {
    auto tokens = scored.vocab.tokens();
    tokens.push_back(options.unk_token);
    scored.vocab = Vocabulary::from_tokens(std::move(tokens));
    scored.scores.push_back(options.unk_penalty);
  }
  return UnigramSpec::create(std::move(scored.vocab), std::move(scored.scores), options.unk_token,
                             options.unk_penalty, options.add_dummy_prefix);
}

}  // namespace vocabport
