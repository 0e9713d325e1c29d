#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vocabport/error.hpp"
#include "vocabport/initializers.hpp"

namespace vocabport {
namespace {

Vocabulary V(std::vector<std::string> t) { return Vocabulary::from_tokens(std::move(t)); }

ModelBundle tied(std::vector<std::string> toks, std::size_t cols, std::vector<float> d) {
  const std::size_t n = toks.size();
  return {V(std::move(toks)), EmbeddingMatrix(n, cols, std::move(d)), std::nullopt, true};
}

InitConfig cfg_for(InitMethod m, std::uint64_t seed = 42) {
  InitConfig c;
  c.method = m;
  c.seed = seed;
  return c;
}

AuxEmbeddings aux2d(std::vector<float> d, AuxKind kind = AuxKind::kAuxModel) {
  const std::size_t n = d.size() / 2;
  return aux_from_aligned_matrix(kind, EmbeddingMatrix(n, 2, std::move(d)));
}

// ---------------------------------------------------------------- random

TEST(InitRandom, ZeroSourceGivesZeroRows) {
  auto src = tied({"a", "b"}, 3, std::vector<float>(6, 0.0f));
  auto r = init_target_bundle(src, V({"a", "x", "y"}), cfg_for(InitMethod::kRandom));
  for (float v : r.bundle.input_emb.data()) EXPECT_EQ(v, 0.0f);
  EXPECT_EQ(r.report.copied, 1u);
  EXPECT_EQ(r.report.random_fallback, 2u);
}

TEST(InitRandom, SeedReproducible) {
  auto s = fixtures::make_synthetic(200, 150, 50, 8, true);
  auto a = init_target_bundle(s.source, s.target, cfg_for(InitMethod::kRandom));
  auto b = init_target_bundle(s.source, s.target, cfg_for(InitMethod::kRandom));
  auto c = init_target_bundle(s.source, s.target, cfg_for(InitMethod::kRandom, 43));
  EXPECT_EQ(a.bundle.input_emb, b.bundle.input_emb);
  EXPECT_EQ(*a.bundle.output_emb, *b.bundle.output_emb);
  EXPECT_FALSE(a.bundle.input_emb == c.bundle.input_emb);
}

TEST(InitRandom, SampleMeanWithinThreeStandardErrors) {
  auto src = tied({"a", "b", "c", "d"}, 1, {1, 3, 1, 3});  // mean 2, std 1
  std::vector<std::string> toks;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) toks.push_back("t" + std::to_string(i));
  auto r = init_target_bundle(src, V(toks), cfg_for(InitMethod::kRandom, 5));
  double sum = 0;
  for (float v : r.bundle.input_emb.data()) sum += v;
  EXPECT_NEAR(sum / n, 2.0, 3.0 / std::sqrt(double(n)));
}

TEST(InitRandom, NoCopyOptionSamplesEverything) {
  auto src = tied({"a", "b"}, 2, {1, 2, 3, 4});
  auto c = cfg_for(InitMethod::kRandom);
  c.random_copy_overlap = false;
  auto r = init_target_bundle(src, V({"a", "b"}), c);
  EXPECT_EQ(r.report.copied, 0u);
  EXPECT_EQ(r.report.random_fallback, 2u);
}

// ---------------------------------------------------------------- clp

TEST(InitClp, FullOverlapIsPureCopy) {
  auto src = tied({"a", "b"}, 2, {1, 2, 3, 4});
  auto aux = aux2d({1, 0, 0, 1});
  auto r = init_target_bundle(src, V({"b", "a"}), cfg_for(InitMethod::kClp), &aux);
  EXPECT_EQ(r.bundle.input_emb, EmbeddingMatrix(2, 2, {3, 4, 1, 2}));
  EXPECT_EQ(r.report.copied, 2u);
}

TEST(InitClp, WeightedAverageOfCosines) {
  auto src = tied({"o1", "o2"}, 2, {1, 0, 0, 1});
  auto target = V({"o1", "o2", "new"});
  const float s = static_cast<float>(std::sqrt(1.0 - 0.04));
  auto aux = aux2d({0.8f, 0.6f, 0.2f, s, 1.0f, 0.0f});
  auto c = cfg_for(InitMethod::kClp);
  c.record_weights = true;
  auto r = init_target_bundle(src, target, c, &aux);
  EXPECT_NEAR(r.bundle.input_emb.at(2, 0), 0.8, 1e-6);
  EXPECT_NEAR(r.bundle.input_emb.at(2, 1), 0.2, 1e-6);
  ASSERT_TRUE(r.weights[2]);
  EXPECT_TRUE(r.weights[2]->convex);
  EXPECT_EQ(r.report.similarity_initialized, 1u);
  EXPECT_EQ(r.row_sources[2], RowSource::kSimilarity);
}

TEST(InitClp, AllNonPositiveCosinesGiveUniformMean) {
  auto src = tied({"o1", "o2", "o3"}, 2, {3, 0, 0, 3, 3, 3});
  auto target = V({"o1", "o2", "o3", "new"});
  auto aux = aux2d({-1, 0, 0, 1, -1, 1, 1, 0});
  auto r = init_target_bundle(src, target, cfg_for(InitMethod::kClp), &aux);
  EXPECT_NEAR(r.bundle.input_emb.at(3, 0), 2.0, 1e-6);
  EXPECT_NEAR(r.bundle.input_emb.at(3, 1), 2.0, 1e-6);
}

TEST(InitClp, RawWeightsEscapeHatch) {
  auto src = tied({"o1", "o2"}, 1, {1, 0});
  auto target = V({"o1", "o2", "new"});
  // cosines 1 and -0.5 -> raw weights 2 and -1
  const float y = static_cast<float>(std::sqrt(0.75));
  auto aux = aux2d({1, 0, -0.5f, y, 1, 0});
  auto c = cfg_for(InitMethod::kClp);
  c.clp_raw_weights = true;
  c.record_weights = true;
  auto r = init_target_bundle(src, target, c, &aux);
  EXPECT_NEAR(r.bundle.input_emb.at(2, 0), 2.0, 1e-6);
  EXPECT_FALSE(r.weights[2]->convex);
}

TEST(InitClp, NeedsAuxModelKind) {
  auto src = tied({"a"}, 2, {1, 2});
  auto wv = aux2d({1, 0, 0, 1}, AuxKind::kWordVectors);
  EXPECT_THROW(init_target_bundle(src, V({"a", "b"}), cfg_for(InitMethod::kClp), &wv),
               ValidationError);
  EXPECT_THROW(init_target_bundle(src, V({"a", "b"}), cfg_for(InitMethod::kClp)), ValidationError);
}

// ---------------------------------------------------------------- heuristics

TEST(InitHeuristics, OverlapCopied) {
  auto s = fixtures::make_synthetic(300, 200, 80, 4, false);
  auto r = init_target_bundle(s.source, s.target, cfg_for(InitMethod::kHeuristics));
  const auto m = compute_overlap(s.source.vocab, s.target);
  for (const auto& p : m.pairs) {
    EXPECT_TRUE(rows_bit_equal(r.bundle.input_emb.row(p.target), s.source.input_emb.row(p.source)));
  }
  EXPECT_TRUE(r.bundle.tied);
  EXPECT_FALSE(r.bundle.output_emb);
}

TEST(InitHeuristics, DegenerateGroupReproducedExactly) {
  std::vector<std::string> toks;
  std::vector<float> d;
  for (int i = 0; i < 12; ++i) {
    toks.push_back("▁w" + std::string(1, char('a' + i)));
    d.insert(d.end(), {5, 5});
  }
  auto src = tied(toks, 2, d);
  auto r = init_target_bundle(src, V({"▁zzz"}), cfg_for(InitMethod::kHeuristics));
  EXPECT_EQ(r.bundle.input_emb.at(0, 0), 5.0f);
  EXPECT_EQ(r.bundle.input_emb.at(0, 1), 5.0f);
  EXPECT_EQ(r.report.group_sampled, 1u);
  EXPECT_EQ(r.report.source_group_sizes.at("Latin/word-initial"), 12u);
}

TEST(InitHeuristics, SmallGroupFallsBackToGlobal) {
  auto src = tied({"▁ab", "▁cd", "мы"}, 1, {1, 1, 1});
  auto r = init_target_bundle(src, V({"▁xy", "123"}), cfg_for(InitMethod::kHeuristics));
  EXPECT_EQ(r.report.random_fallback, 2u);
  auto c = cfg_for(InitMethod::kHeuristics);
  c.min_group_size = 2;
  auto r2 = init_target_bundle(src, V({"▁xy", "123"}), c);
  EXPECT_EQ(r2.report.group_sampled, 1u);
  EXPECT_EQ(r2.report.random_fallback, 1u);  // "123" has no script
}

TEST(InitHeuristics, GroupMeanWithinThreeStandardErrors) {
  // Latin word-initial group: rows [0,0],[2,2] repeated -> mean [1,1], std [1,1]
  std::vector<std::string> toks;
  std::vector<float> d;
  for (int i = 0; i < 20; ++i) {
    toks.push_back("▁" + std::string(1, char('a' + i)) + "q");
    const float v = i % 2 ? 2.0f : 0.0f;
    d.insert(d.end(), {v, v});
  }
  auto src = tied(toks, 2, d);
  std::vector<std::string> tgt;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) tgt.push_back("▁new" + std::to_string(i));
  auto r = init_target_bundle(src, V(tgt), cfg_for(InitMethod::kHeuristics, 9));
  ASSERT_EQ(r.report.group_sampled, n);
  for (int c = 0; c < 2; ++c) {
    double sum = 0;
    for (std::size_t t = 0; t < n; ++t) sum += r.bundle.input_emb.at(t, c);
    EXPECT_NEAR(sum / n, 1.0, 3.0 / std::sqrt(double(n)));
  }
}

// ---------------------------------------------------------------- focus / clp+

TEST(InitFocus, DominantSimilaritySelectsOneRow) {
  auto src = tied({"o1", "o2", "o3"}, 2, {1, 2, 3, 4, 5, 6});
  auto target = V({"o1", "o2", "o3", "new"});
  // cosines against "new": 1, 0, 0 -> sparsemax [1, 0, 0]
  auto wv = aux2d({1, 0, 0, 1, 0, 1, 1, 0}, AuxKind::kWordVectors);
  auto r = init_target_bundle(src, target, cfg_for(InitMethod::kFocus), &wv);
  EXPECT_EQ(r.bundle.input_emb.at(3, 0), 1.0f);
  EXPECT_EQ(r.bundle.input_emb.at(3, 1), 2.0f);
}

TEST(InitFocus, EqualSimilaritiesGiveMean) {
  auto src = tied({"o1", "o2"}, 2, {0, 4, 2, 0});
  auto target = V({"o1", "o2", "new"});
  auto wv = aux2d({1, 1, 1, 1, 1, 1}, AuxKind::kWordVectors);
  auto r = init_target_bundle(src, target, cfg_for(InitMethod::kFocus), &wv);
  EXPECT_NEAR(r.bundle.input_emb.at(2, 0), 1.0, 1e-6);
  EXPECT_NEAR(r.bundle.input_emb.at(2, 1), 2.0, 1e-6);
}

TEST(InitFocus, MissingVectorFallsBackToRandom) {
  auto src = tied({"o1", "o2"}, 2, {0, 4, 2, 0});
  auto target = V({"o1", "o2", "new", "lost"});
  auto wv = parse_word_vectors("3 2\no1 1 0\no2 0 1\nnew 1 1\n", target);
  auto r = init_target_bundle(src, target, cfg_for(InitMethod::kFocus), &wv);
  EXPECT_EQ(r.report.similarity_initialized, 1u);
  EXPECT_EQ(r.report.random_fallback, 1u);
  EXPECT_EQ(r.row_sources[3], RowSource::kRandomFallback);

  auto strict = cfg_for(InitMethod::kFocus);
  strict.missing_aux_policy = MissingAuxPolicy::kError;
  EXPECT_THROW(init_target_bundle(src, target, strict, &wv), ValidationError);
}

TEST(InitFocus, OverlapWithoutVectorLeavesSupport) {
  auto src = tied({"o1", "o2"}, 1, {10, 20});
  auto target = V({"o1", "o2", "new"});
  // o2 has no vector, so the only support entry is o1
  auto wv = parse_word_vectors("2 2\no1 0 1\nnew 1 0\n", target);
  auto r = init_target_bundle(src, target, cfg_for(InitMethod::kFocus), &wv);
  EXPECT_EQ(r.bundle.input_emb.at(2, 0), 10.0f);
}

TEST(InitFocus, EmptySupportIsError) {
  auto src = tied({"o1"}, 1, {1});
  auto target = V({"o1", "new"});
  auto wv = parse_word_vectors("1 2\nnew 1 0\n", target);
  EXPECT_THROW(init_target_bundle(src, target, cfg_for(InitMethod::kFocus), &wv), ValidationError);
}

TEST(InitFocus, RequiresWordVectors) {
  auto src = tied({"a"}, 2, {1, 2});
  EXPECT_THROW(init_target_bundle(src, V({"a", "b"}), cfg_for(InitMethod::kFocus)),
               ValidationError);
}

TEST(InitClpPlus, SameKernelAsFocus) {
  auto s = fixtures::make_synthetic(200, 150, 60, 6, true);
  auto wv = aux_from_aligned_matrix(AuxKind::kWordVectors, s.aux);
  auto am = aux_from_aligned_matrix(AuxKind::kAuxModel, s.aux);
  auto f = init_target_bundle(s.source, s.target, cfg_for(InitMethod::kFocus), &wv);
  auto p = init_target_bundle(s.source, s.target, cfg_for(InitMethod::kClpPlus), &am);
  EXPECT_EQ(f.bundle.input_emb, p.bundle.input_emb);
  EXPECT_EQ(*f.bundle.output_emb, *p.bundle.output_emb);
}

TEST(InitClpPlus, SparsemaxWeightsInsideHull) {
  auto src = tied({"o1", "o2", "o3"}, 2, {1, 0, 0, 1, 4, 4});
  auto target = V({"o1", "o2", "o3", "new"});
  // unit query [1,0]; support vectors chosen so the cosines are 0.9, 0.1, 0.05
  auto unit = [](double c) {
    return std::vector<float>{static_cast<float>(c), static_cast<float>(std::sqrt(1 - c * c))};
  };
  std::vector<float> d;
  for (double c : {0.9, 0.1, 0.05}) {
    auto u = unit(c);
    d.insert(d.end(), u.begin(), u.end());
  }
  d.insert(d.end(), {1, 0});
  auto aux = aux2d(d);
  auto c = cfg_for(InitMethod::kClpPlus);
  c.record_weights = true;
  auto r = init_target_bundle(src, target, c, &aux);

  std::vector<double> cos;
  for (int i = 0; i < 3; ++i) cos.push_back(static_cast<double>(d[2 * i]));
  auto p = oracle::simplex_projection(cos);
  const auto& w = *r.weights[3];
  ASSERT_EQ(w.ids.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(w.weights[i], p[i], 1e-6);
  const double x = p[0] * 1 + p[2] * 4;
  const double y = p[1] * 1 + p[2] * 4;
  EXPECT_NEAR(r.bundle.input_emb.at(3, 0), x, 1e-6);
  EXPECT_NEAR(r.bundle.input_emb.at(3, 1), y, 1e-6);
}

TEST(InitClpPlus, FullOverlapReportsNoSimilarityRows) {
  auto src = tied({"a", "b"}, 2, {1, 2, 3, 4});
  auto aux = aux2d({1, 0, 0, 1});
  auto r = init_target_bundle(src, V({"b", "a"}), cfg_for(InitMethod::kClpPlus), &aux);
  EXPECT_EQ(r.report.similarity_initialized, 0u);
  EXPECT_EQ(r.report.copied, 2u);
  EXPECT_EQ(r.bundle.input_emb.at(0, 0), 3.0f);
}

TEST(InitClpPlus, UntiedOutputUsesSameWeights) {
  auto s = fixtures::make_synthetic(120, 90, 40, 5, true);
  auto am = aux_from_aligned_matrix(AuxKind::kAuxModel, s.aux);
  auto c = cfg_for(InitMethod::kClpPlus);
  c.record_weights = true;
  auto r = init_target_bundle(s.source, s.target, c, &am);
  std::size_t checked = 0;
  for (TokenId t = 0; t < s.target.size(); ++t) {
    if (!r.weights[t]) continue;
    const auto& w = *r.weights[t];
    for (std::size_t col = 0; col < 5; ++col) {
      double in = 0, out = 0;
      for (std::size_t i = 0; i < w.ids.size(); ++i) {
        in += w.weights[i] * s.source.input_emb.at(w.ids[i], col);
        out += w.weights[i] * s.source.output_emb->at(w.ids[i], col);
      }
      EXPECT_NEAR(r.bundle.input_emb.at(t, col), in, 1e-5);
      EXPECT_NEAR(r.bundle.output_emb->at(t, col), out, 1e-5);
    }
    ++checked;
  }
  EXPECT_EQ(checked, r.report.similarity_initialized);
  EXPECT_GT(checked, 0u);
}

// ---------------------------------------------------------------- shared contract

class AllMethods : public ::testing::TestWithParam<InitMethod> {};

TEST_P(AllMethods, CopyConservationAndThreads) {
  auto s = fixtures::make_synthetic(250, 180, 70, 6, true);
  auto wv = aux_from_aligned_matrix(AuxKind::kWordVectors, s.aux);
  auto am = aux_from_aligned_matrix(AuxKind::kAuxModel, s.aux);
  const auto* aux = GetParam() == InitMethod::kFocus ? &wv : &am;
  auto c = cfg_for(GetParam());
  c.min_group_size = 3;
  auto one = init_target_bundle(s.source, s.target, c, aux);
  c.threads = 5;
  auto many = init_target_bundle(s.source, s.target, c, aux);
  EXPECT_EQ(one.bundle.input_emb, many.bundle.input_emb);
  EXPECT_EQ(*one.bundle.output_emb, *many.bundle.output_emb);
  EXPECT_EQ(one.report.total(), s.target.size());
  EXPECT_EQ(one.report.copied, 70u);
  EXPECT_EQ(one.bundle.vocab, s.target);
  EXPECT_TRUE(validate_bundle(one.bundle).empty());
}

INSTANTIATE_TEST_SUITE_P(Init, AllMethods,
                         ::testing::Values(InitMethod::kRandom, InitMethod::kClp,
                                           InitMethod::kHeuristics, InitMethod::kFocus,
                                           InitMethod::kClpPlus),
                         [](const auto& info) {
                           auto s = std::string(to_string(info.param));
                           std::erase(s, '-');
                           return s;
                         });

TEST(InitConfig, Validation) {
  auto src = tied({"a"}, 1, {1});
  auto c = cfg_for(InitMethod::kRandom);
  c.sparsemax_temperature = 0;
  EXPECT_THROW(init_target_bundle(src, V({"b"}), c), ValidationError);
  c.sparsemax_temperature = 1;
  c.threads = 0;
  EXPECT_THROW(init_target_bundle(src, V({"b"}), c), ValidationError);
  EXPECT_THROW(parse_init_method("magic"), ValidationError);
  EXPECT_EQ(parse_init_method("clp-plus"), InitMethod::kClpPlus);
  EXPECT_THROW(parse_missing_aux_policy("ignore"), ValidationError);
}

TEST(RowStreamSeed, DistinctPerTokenAndMatrix) {
  EXPECT_NE(row_stream_seed(42, 0, 0), row_stream_seed(42, 1, 0));
  EXPECT_NE(row_stream_seed(42, 0, 0), row_stream_seed(42, 0, 1));
  EXPECT_NE(row_stream_seed(42, 0, 0), row_stream_seed(43, 0, 0));
  EXPECT_EQ(row_stream_seed(42, 7, 1), row_stream_seed(42, 7, 1));
}

}  // namespace
}  // namespace vocabport
