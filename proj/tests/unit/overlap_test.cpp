#include <gtest/gtest.h>

#include <random>
#include <set>

#include "vocabport/error.hpp"
#include "vocabport/overlap.hpp"

namespace vocabport {
namespace {

Vocabulary V(std::vector<std::string> t) { return Vocabulary::from_tokens(std::move(t)); }

TEST(Overlap, Basic) {
  auto m = compute_overlap(V({"a", "b"}), V({"b", "c"}));
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0], (OverlapPair{0, 1}));
  EXPECT_EQ(m.non_overlap, std::vector<TokenId>{1});
  EXPECT_EQ(m.target_size, 2u);
}

TEST(Overlap, Identical) {
  auto v = V({"x", "y", "z"});
  auto m = compute_overlap(v, v);
  EXPECT_EQ(m.pairs.size(), 3u);
  EXPECT_TRUE(m.non_overlap.empty());
  for (const auto& p : m.pairs) EXPECT_EQ(p.source, p.target);
}

TEST(Overlap, MarkerConventions) {
  auto src = V({"▁the"});
  auto tgt = V({"Ġthe"});
  EXPECT_TRUE(compute_overlap(src, tgt, Canonicalization::kExact).pairs.empty());
  auto m = compute_overlap(src, tgt, Canonicalization::kMarkerNormalized);
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0], (OverlapPair{0, 0}));
}

TEST(Overlap, NormalizedPrefersExactThenLowestId) {
  // target "Ġx" matches source "Ġx" exactly; target "▁x" may then only take "▁x"
  auto src = V({"▁x", "Ġx"});
  auto tgt = V({"▁x", "Ġx"});
  auto m = compute_overlap(src, tgt, Canonicalization::kMarkerNormalized);
  ASSERT_EQ(m.pairs.size(), 2u);
  EXPECT_EQ(m.pairs[0], (OverlapPair{0, 0}));
  EXPECT_EQ(m.pairs[1], (OverlapPair{1, 1}));

  auto src2 = V({"Ġy", "▁y"});
  auto tgt2 = V({"y", "▁y", "Ġz"});
  auto m2 = compute_overlap(src2, tgt2, Canonicalization::kMarkerNormalized);
  ASSERT_EQ(m2.pairs.size(), 1u);
  EXPECT_EQ(m2.pairs[0], (OverlapPair{1, 1}));
}

TEST(Overlap, CollisionLoserWarns) {
  auto src = V({"▁q"});
  auto tgt = V({"Ġq", "▁q"});
  auto m = compute_overlap(src, tgt, Canonicalization::kMarkerNormalized);
  // the exact match "▁q" claims the only source token
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0], (OverlapPair{1, 0}));
  EXPECT_EQ(m.non_overlap, std::vector<TokenId>{0});
  EXPECT_FALSE(m.warnings.empty());
}

TEST(Overlap, PartitionAndInjectivityProperty) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> alphabet = {"a", "b", "▁a", "Ġa", "▁b", "Ġb", "ab", "▁ab", "Ġab"};
  for (int trial = 0; trial < 200; ++trial) {
    auto sample = [&](std::size_t n) {
      std::vector<std::string> all = alphabet;
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(n);
      return V(all);
    };
    auto src = sample(1 + rng() % alphabet.size());
    auto tgt = sample(1 + rng() % alphabet.size());
    for (auto canon : {Canonicalization::kExact, Canonicalization::kMarkerNormalized}) {
      auto m = compute_overlap(src, tgt, canon);
      std::set<TokenId> seen_t;
      std::set<TokenId> seen_s;
      for (const auto& p : m.pairs) {
        EXPECT_TRUE(seen_t.insert(p.target).second);
        EXPECT_TRUE(seen_s.insert(p.source).second);
        const auto& ts = tgt.token(p.target);
        const auto& ss = src.token(p.source);
        if (canon == Canonicalization::kExact) {
          EXPECT_EQ(ts, ss);
        } else {
          EXPECT_EQ(canonical_marker_form(ts), canonical_marker_form(ss));
        }
      }
      for (auto t : m.non_overlap) EXPECT_TRUE(seen_t.insert(t).second);
      EXPECT_EQ(seen_t.size(), tgt.size());
      EXPECT_TRUE(std::is_sorted(m.pairs.begin(), m.pairs.end(),
                                 [](auto& a, auto& b) { return a.target < b.target; }));
    }
  }
}

TEST(OverlapStats, Fractions) {
  OverlapMap m;
  m.pairs = {{0, 0}, {1, 1}, {2, 2}};
  m.non_overlap = {3};
  m.target_size = 4;
  auto s = overlap_stats(m);
  EXPECT_EQ(s.overlap_count, 3u);
  EXPECT_EQ(s.non_overlap_count, 1u);
  EXPECT_DOUBLE_EQ(s.overlap_fraction, 0.75);

  EXPECT_DOUBLE_EQ(overlap_stats(compute_overlap(V({"a"}), V({"b"}))).overlap_fraction, 0.0);

  std::vector<std::string> big;
  for (int i = 0; i < 32000; ++i) big.push_back("t" + std::to_string(i));
  auto bv = V(big);
  EXPECT_DOUBLE_EQ(overlap_stats(compute_overlap(bv, bv)).overlap_fraction, 1.0);
}

TEST(Overlap, CanonParse) {
  EXPECT_EQ(parse_canonicalization("exact"), Canonicalization::kExact);
  EXPECT_EQ(parse_canonicalization("marker-normalized"), Canonicalization::kMarkerNormalized);
  EXPECT_THROW(parse_canonicalization("fuzzy"), ValidationError);
  EXPECT_EQ(canonical_marker_form("Ġab"), "▁ab");
  EXPECT_EQ(canonical_marker_form("ab"), "ab");
}

}  // namespace
}  // namespace vocabport
