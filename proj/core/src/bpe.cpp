#include <queue>

#include "file_io.hpp"
#include "vocabport/byte_level.hpp"
#include "vocabport/error.hpp"
#include "vocabport/tokenizer.hpp"
#include "vocabport/utf8.hpp"

namespace vocabport {

namespace {

std::string rank_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back('\0');
  key.append(right);
  return key;
}

/// Characters of a symbol string; invalid UTF-8 bytes become single-byte
/// pieces.
std::vector<std::string> symbol_chars(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto d = utf8::decode_at(s, pos);
    const std::size_t len = d ? d->length : 1;
    out.emplace_back(s.substr(pos, len));
    pos += len;
  }
  return out;
}

struct Candidate {
  std::int64_t rank;
  std::size_t left;
  std::size_t right;
  std::size_t merged_size;

  bool operator>(const Candidate& o) const {
    return rank != o.rank ? rank > o.rank : left > o.left;
  }
};

/// Applies merges to one pretoken, lowest rank first, leftmost on ties.
std::vector<std::string> merge_word(const BpeSpec& spec, std::string_view word) {
  std::vector<std::string> sym = symbol_chars(word);
  const std::size_t n = sym.size();
  if (n < 2) return sym;

  std::vector<std::ptrdiff_t> prev(n);
  std::vector<std::ptrdiff_t> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = static_cast<std::ptrdiff_t>(i) - 1;
    next[i] = i + 1 < n ? static_cast<std::ptrdiff_t>(i + 1) : -1;
  }

  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto push = [&](std::ptrdiff_t l, std::ptrdiff_t r) {
    if (l < 0 || r < 0) return;
    const auto rank = spec.rank(sym[l], sym[r]);
    if (rank < 0) return;
    queue.push({rank, static_cast<std::size_t>(l), static_cast<std::size_t>(r),
                sym[l].size() + sym[r].size()});
  };
  for (std::size_t i = 0; i + 1 < n; ++i) push(i, i + 1);

  while (!queue.empty()) {
    const auto c = queue.top();
    queue.pop();
    // stale if either side has been merged away or grown since the push
    if (sym[c.left].empty() || sym[c.right].empty() ||
        next[c.left] != static_cast<std::ptrdiff_t>(c.right) ||
        sym[c.left].size() + sym[c.right].size() != c.merged_size ||
        spec.rank(sym[c.left], sym[c.right]) != c.rank) {
      continue;
    }
    sym[c.left] += sym[c.right];
    sym[c.right].clear();
    next[c.left] = next[c.right];
    if (next[c.right] >= 0) prev[next[c.right]] = static_cast<std::ptrdiff_t>(c.left);
    push(prev[c.left], static_cast<std::ptrdiff_t>(c.left));
    push(static_cast<std::ptrdiff_t>(c.left), next[c.left]);
  }

  std::vector<std::string> out;
  for (std::ptrdiff_t i = 0; i >= 0; i = next[i]) out.push_back(std::move(sym[i]));
  return out;
}

}  // namespace

BpeSpec BpeSpec::create(Vocabulary vocab, std::vector<MergeRule> merges, bool byte_level) {
  BpeSpec spec;
  spec.ranks_.reserve(merges.size());
  for (std::size_t i = 0; i < merges.size(); ++i) {
    const auto& [l, r] = merges[i];
    if (!vocab.contains(l + r)) {
      throw ValidationError("merge #" + std::to_string(i) + " (" + l + " " + r + ") produces '" +
                            l + r + "', which is not in the vocabulary");
    }
    if (!spec.ranks_.emplace(rank_key(l, r), static_cast<std::int64_t>(i)).second) {
      throw ValidationError("merge #" + std::to_string(i) + " (" + l + " " + r +
                            ") is listed twice");
    }
  }
  spec.vocab_ = std::move(vocab);
  spec.merges_ = std::move(merges);
  spec.byte_level_ = byte_level;
  return spec;
}

std::int64_t BpeSpec::rank(std::string_view left, std::string_view right) const {
  auto it = ranks_.find(rank_key(left, right));
  return it == ranks_.end() ? -1 : it->second;
}

std::vector<std::string> bpe_encode_pieces(const BpeSpec& spec, std::string_view text) {
  std::vector<std::string> out;
  const auto words = spec.byte_level() ? byte_level_pretokenize(text) : split_pretokens(text);
  for (const auto& w : words) {
    for (auto& s : merge_word(spec, w)) {
      if (spec.vocab().contains(s)) {
        out.push_back(std::move(s));
        continue;
      }
      for (auto& ch : symbol_chars(s)) {
        if (!spec.vocab().contains(ch)) {
          throw ValidationError("malformed BPE spec: base symbol '" + ch +
                                "' is not in the vocabulary");
        }
        out.push_back(std::move(ch));
      }
    }
  }
  return out;
}

std::vector<TokenId> bpe_encode(const BpeSpec& spec, std::string_view text) {
  auto pieces = bpe_encode_pieces(spec, text);
  std::vector<TokenId> ids;
  ids.reserve(pieces.size());
  for (const auto& p : pieces) ids.push_back(*spec.vocab().find(p));
  return ids;
}

std::string bpe_decode(const BpeSpec& spec, const std::vector<TokenId>& ids) {
  std::string joined;
  for (auto id : ids) joined += spec.vocab().token(id);
  if (!spec.byte_level()) return joined;
  auto raw = byte_level::decode(joined);
  if (!raw) throw ValidationError("token sequence contains characters outside the byte map");
  return *raw;
}

std::vector<MergeRule> parse_merges(std::string_view contents, std::string_view origin) {
  std::vector<MergeRule> merges;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    auto nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    auto line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with('#')) continue;
    if (line.empty()) continue;
    auto sp = line.find(' ');
    if (sp == std::string_view::npos || sp == 0 || sp + 1 >= line.size() ||
        line.find(' ', sp + 1) != std::string_view::npos) {
      throw ValidationError(std::string(origin) + ":" + std::to_string(line_no) +
                            ": expected 'left right'");
    }
    merges.emplace_back(std::string(line.substr(0, sp)), std::string(line.substr(sp + 1)));
  }
  return merges;
}

BpeSpec load_bpe_spec(const std::filesystem::path& vocab_json,
                      const std::filesystem::path& merges_txt, bool byte_level) {
  auto vocab = load_vocab(vocab_json, VocabFormat::kJsonMap);
  auto merges = parse_merges(detail::read_text_file(merges_txt), merges_txt.string());
  return BpeSpec::create(std::move(vocab), std::move(merges), byte_level);
}

}  // namespace vocabport
