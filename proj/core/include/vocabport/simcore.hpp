#pragma once

#include <span>
#include <vector>

#include "vocabport/embedding_matrix.hpp"
#include "vocabport/vocabulary.hpp"

namespace vocabport {

struct Cosine {
  double value = 0.0;
  bool degenerate = false;  // one input had zero norm; value is 0 by policy
};

/// a.b / (|a||b|) accumulated in f64 and clamped into [-1, 1].
/// Throws ValidationError on a length mismatch.
Cosine cosine_similarity(std::span<const float> a, std::span<const float> b);
Cosine cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Euclidean projection of `z` onto the probability simplex (sort-based).
/// Throws ValidationError on empty or non-finite input.
std::vector<double> sparsemax(std::span<const double> z);

/// Source ids paired with their combination weights.
struct WeightVector {
  std::vector<TokenId> ids;
  std::vector<double> weights;
  bool convex = false;
};

inline constexpr double kConvexTolerance = 1e-6;

/// Checks ids/weights alignment, finiteness, and, when flagged convex,
/// nonnegativity and unit sum within kConvexTolerance.
void require_valid_weights(const WeightVector& w);

/// sum_i w_i * rows[id_i] in f64; `w` must be flagged convex.
std::vector<double> convex_combine(const WeightVector& w, const EmbeddingMatrix& rows);

/// Same sum without the convexity requirement.
std::vector<double> weighted_sum(const WeightVector& w, const EmbeddingMatrix& rows);

}  // namespace vocabport
