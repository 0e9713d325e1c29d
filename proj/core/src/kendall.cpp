#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "vocabport/efficiency.hpp"
#include "vocabport/error.hpp"

namespace vocabport {

namespace {

/// Pairs within runs of equal values in an already sorted sequence.
template <typename It, typename Eq>
std::uint64_t tied_pairs(It first, It last, Eq eq) {
  std::uint64_t total = 0;
  while (first != last) {
    auto run_end = std::find_if_not(first + 1, last, [&](const auto& v) { return eq(*first, v); });
    const auto t = static_cast<std::uint64_t>(run_end - first);
    total += t * (t - 1) / 2;
    first = run_end;
  }
  return total;
}

/// Stable merge sort of `v` by value, returning the number of strict
/// inversions (i < j with v[i] > v[j]).
std::uint64_t sort_count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                                    std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = sort_count_inversions(v, scratch, lo, mid) +
                        sort_count_inversions(v, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return swaps;
}

}  // namespace

// Knight's algorithm: sort by (x, y), count joint and x ties, then count the
// inversions left in y with a merge sort.
double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("kendall_tau: sequences differ in length (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("kendall_tau needs at least two observations");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw ValidationError("kendall_tau: non-finite value at index " + std::to_string(i));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  std::vector<std::pair<double, double>> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {x[order[i]], y[order[i]]};

  const std::uint64_t x_ties =
      tied_pairs(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first == b.first; });
  const std::uint64_t joint_ties =
      tied_pairs(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a == b; });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = pts[i].second;
  std::vector<double> scratch(n);
  const std::uint64_t swaps = sort_count_inversions(ys, scratch, 0, n);
  const std::uint64_t y_ties =
      tied_pairs(ys.begin(), ys.end(), [](double a, double b) { return a == b; });

  const std::uint64_t all_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (x_ties == all_pairs || y_ties == all_pairs) {
    throw ValidationError("kendall_tau is undefined when a sequence is entirely tied");
  }
  // concordant - discordant
  const auto numerator = static_cast<std::int64_t>(all_pairs + joint_ties) -
                         static_cast<std::int64_t>(x_ties + y_ties) -
                         2 * static_cast<std::int64_t>(swaps);
  const double denom = std::sqrt(static_cast<double>(all_pairs - x_ties) *
                                 static_cast<double>(all_pairs - y_ties));
  return static_cast<double>(numerator) / denom;
}

}  // namespace vocabport
