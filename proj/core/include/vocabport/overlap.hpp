#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vocabport/vocabulary.hpp"

namespace vocabport {

enum class Canonicalization {
  kExact,             // raw string comparison
  kMarkerNormalized,  // a leading "Ġ" and a leading "▁" compare equal
};

Canonicalization parse_canonicalization(std::string_view name);

struct OverlapPair {
  TokenId target = 0;
  TokenId source = 0;
  friend bool operator==(const OverlapPair&, const OverlapPair&) = default;
};

/// Partition of the target ids into tokens found in the source vocabulary
/// (with their source id) and tokens that are not.
struct OverlapMap {
  std::vector<OverlapPair> pairs;   // ascending target id
  std::vector<TokenId> non_overlap; // ascending target id
  std::vector<std::string> warnings;
  std::size_t target_size = 0;
};

/// Matching is injective: each source token backs at most one target token.
/// In marker-normalized mode an exact string match always wins; remaining
/// candidates are tried lowest source id first, claimed in target-id order.
/// Target tokens that lose a collision go to non_overlap with a warning.
OverlapMap compute_overlap(const Vocabulary& source, const Vocabulary& target,
                           Canonicalization canon = Canonicalization::kExact);

struct OverlapStats {
  std::size_t overlap_count = 0;
  std::size_t non_overlap_count = 0;
  double overlap_fraction = 0.0;
};

OverlapStats overlap_stats(const OverlapMap& m);

/// Replaces a leading "Ġ" or "▁" with "▁"; other strings are returned as-is.
std::string canonical_marker_form(std::string_view token);

}  // namespace vocabport
