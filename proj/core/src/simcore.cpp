#include "vocabport/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vocabport/error.hpp"

namespace vocabport {

namespace {

template <typename T>
Cosine cosine_impl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw ValidationError("cosine_similarity: length mismatch " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) return {0.0, true};
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return {std::clamp(c, -1.0, 1.0), false};
}

std::vector<double> combine(const WeightVector& w, const EmbeddingMatrix& rows) {
  if (w.ids.size() != w.weights.size()) {
    throw ValidationError("weight vector ids/weights length mismatch");
  }
  std::vector<double> out(rows.cols(), 0.0);
  for (std::size_t i = 0; i < w.ids.size(); ++i) {
    if (w.ids[i] >= rows.rows()) {
      throw ValidationError("weight id " + std::to_string(w.ids[i]) + " out of range (" +
                            std::to_string(rows.rows()) + " rows)");
    }
    const double wi = w.weights[i];
    if (wi == 0.0) continue;
    const auto r = rows.row(w.ids[i]);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += wi * r[c];
  }
  return out;
}

}  // namespace

Cosine cosine_similarity(std::span<const float> a, std::span<const float> b) {
  return cosine_impl(a, b);
}

Cosine cosine_similarity(std::span<const double> a, std::span<const double> b) {
  return cosine_impl(a, b);
}

std::vector<double> sparsemax(std::span<const double> z) {
  if (z.empty()) throw ValidationError("sparsemax of an empty vector");
  for (double v : z) {
    if (!std::isfinite(v)) throw ValidationError("sparsemax input is not finite");
  }

  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Support size k is the largest j with 1 + j*z_(j) > sum_{i<=j} z_(i).
  double cumsum = 0.0;
  double support_sum = sorted[0];
  std::size_t k = 1;
  for (std::size_t j = 1; j <= sorted.size(); ++j) {
    cumsum += sorted[j - 1];
    if (1.0 + static_cast<double>(j) * sorted[j - 1] > cumsum) {
      k = j;
      support_sum = cumsum;
    }
  }
  const double tau = (support_sum - 1.0) / static_cast<double>(k);

  std::vector<double> p(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) p[i] = std::max(z[i] - tau, 0.0);
  return p;
}

void require_valid_weights(const WeightVector& w) {
  if (w.ids.size() != w.weights.size()) {
    throw ValidationError("weight vector ids/weights length mismatch");
  }
  double sum = 0.0;
  for (double v : w.weights) {
    if (!std::isfinite(v)) throw ValidationError("weight vector holds a non-finite weight");
    if (w.convex && v < 0.0) throw ValidationError("convex weight vector has a negative weight");
    sum += v;
  }
  if (w.convex && std::abs(sum - 1.0) > kConvexTolerance) {
    throw ValidationError("convex weight vector sums to " + std::to_string(sum));
  }
}

std::vector<double> convex_combine(const WeightVector& w, const EmbeddingMatrix& rows) {
  if (!w.convex) throw ValidationError("convex_combine requires a convex weight vector");
  require_valid_weights(w);
  return combine(w, rows);
}

std::vector<double> weighted_sum(const WeightVector& w, const EmbeddingMatrix& rows) {
  require_valid_weights(w);
  return combine(w, rows);
}

}  // namespace vocabport
