#include "vocabport/overlap.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "vocabport/error.hpp"

namespace vocabport {

namespace {
constexpr std::string_view kGpt2Marker = "\xC4\xA0";      // U+0120 'Ġ'
constexpr std::string_view kSentencePieceMarker = "\xE2\x96\x81";  // U+2581 '▁'
}  // namespace

Canonicalization parse_canonicalization(std::string_view name) {
  if (name == "exact") return Canonicalization::kExact;
  if (name == "marker-normalized") return Canonicalization::kMarkerNormalized;
  throw ValidationError("unknown canonicalization '" + std::string(name) + "'");
}

std::string canonical_marker_form(std::string_view token) {
  if (token.starts_with(kGpt2Marker)) {
    return std::string(kSentencePieceMarker) + std::string(token.substr(kGpt2Marker.size()));
  }
  return std::string(token);
}

OverlapMap compute_overlap(const Vocabulary& source, const Vocabulary& target,
                           Canonicalization canon) {
  OverlapMap out;
  out.target_size = target.size();

  std::vector<std::optional<TokenId>> match(target.size());
  for (TokenId t = 0; t < target.size(); ++t) match[t] = source.find(target.token(t));

  if (canon == Canonicalization::kMarkerNormalized) {
    std::unordered_map<std::string, std::vector<TokenId>> by_canon;
    for (TokenId s = 0; s < source.size(); ++s) {
      by_canon[canonical_marker_form(source.token(s))].push_back(s);
    }
    std::vector<bool> claimed(source.size(), false);
    for (const auto& m : match) {
      if (m) claimed[*m] = true;
    }
    for (TokenId t = 0; t < target.size(); ++t) {
      if (match[t]) continue;
      auto it = by_canon.find(canonical_marker_form(target.token(t)));
      if (it == by_canon.end()) continue;
      // ids were pushed in ascending order
      const auto& candidates = it->second;
      auto free = std::find_if(candidates.begin(), candidates.end(),
                               [&](TokenId s) { return !claimed[s]; });
      if (free == candidates.end()) {
        out.warnings.push_back("target token '" + target.token(t) +
                               "' collides with an already matched source token '" +
                               source.token(candidates.front()) + "'; left non-overlapping");
        continue;
      }
      claimed[*free] = true;
      match[t] = *free;
    }
  }

  for (TokenId t = 0; t < target.size(); ++t) {
    if (match[t]) {
      out.pairs.push_back({t, *match[t]});
    } else {
      out.non_overlap.push_back(t);
    }
  }
  return out;
}

OverlapStats overlap_stats(const OverlapMap& m) {
  OverlapStats s;
  s.overlap_count = m.pairs.size();
  s.non_overlap_count = m.non_overlap.size();
  const auto total = s.overlap_count + s.non_overlap_count;
  s.overlap_fraction = total == 0 ? 0.0 : static_cast<double>(s.overlap_count) / total;
  return s;
}

}  // namespace vocabport
