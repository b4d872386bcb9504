#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bf/barcode.hpp"

namespace bf {

// L1 displacement between two bars.
inline double bar_cost(const Bar& a, const Bar& b) { return std::abs(a.birth - b.birth) + std::abs(a.death - b.death); }

namespace detail {

// Kuhn's augmenting-path matching on the bipartite graph {(i, j) : cost(i, j) <= limit}.
class ThresholdMatcher {
 public:
  ThresholdMatcher(const std::vector<double>& cost, std::size_t m) : cost_(cost), m_(m) {}

  bool perfect(double limit) {
    limit_ = limit;
    match_right_.assign(m_, npos);
    for (std::size_t i = 0; i < m_; ++i) {
      seen_.assign(m_, false);
      if (!augment(i)) return false;
    }
    return true;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool augment(std::size_t i) {
    for (std::size_t j = 0; j < m_; ++j) {
      if (seen_[j] || cost_[i * m_ + j] > limit_) continue;
      seen_[j] = true;
      if (match_right_[j] == npos || augment(match_right_[j])) {
        match_right_[j] = i;
        return true;
      }
    }
    return false;
  }

  const std::vector<double>& cost_;
  std::size_t m_;
  double limit_ = 0.0;
  std::vector<std::size_t> match_right_;
  std::vector<bool> seen_;
};

}  // namespace detail

// min over bijections gamma of bars 1..n, max over i of |b_i - b'_g(i)| + |d_i - d'_g(i)|,
// with bar 0 always paired to bar 0. Binary search over the sorted candidate
// costs, each candidate checked by bipartite matching.
inline double bottleneck_distance(const StrictBarcode& a, const StrictBarcode& b) {
  if (a.size() != b.size()) {
    throw SizeMismatch("bottleneck distance needs equal bar counts (" + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()) + ")");
  }
  const double root_cost = bar_cost(a[0], b[0]);
  const std::size_t m = a.n();
  if (m == 0) return root_cost;

  std::vector<double> cost(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) cost[i * m + j] = bar_cost(a[i + 1], b[j + 1]);

  std::vector<double> candidates = cost;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // Nothing below root_cost can change the answer.
  const auto first = std::lower_bound(candidates.begin(), candidates.end(), root_cost);
  if (first != candidates.begin()) {
    candidates.erase(candidates.begin(), first);
    candidates.insert(candidates.begin(), root_cost);
  }

  detail::ThresholdMatcher matcher(cost, m);
  std::size_t lo = 0, hi = candidates.size() - 1;  // the largest candidate is always feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.perfect(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::max(root_cost, candidates[lo]);
}

}  // namespace bf
