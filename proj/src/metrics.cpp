#include "cosc/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cosc/rng.hpp"

namespace cosc {

double clustering_error(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size())
    throw std::invalid_argument("clustering_error: length mismatch");
  if (pred.empty()) throw std::invalid_argument("clustering_error: empty input");

  // per predicted cluster, count truth labels
  std::map<int, std::map<int, int>> counts;
  for (std::size_t i = 0; i < pred.size(); ++i) ++counts[pred[i]][truth[i]];

  std::map<int, int> assigned;
  for (const auto& [cluster, hist] : counts) {
    int best_label = 0, best_count = -1;
    for (const auto& [label, count] : hist) {
      if (count > best_count) {  // map order breaks ties by smallest label
        best_count = count;
        best_label = label;
      }
    }
    assigned[cluster] = best_label;
  }

  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (assigned[pred[i]] != truth[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(pred.size());
}

ConstraintSet generate_constraints(const std::vector<int>& truth, int count,
                                   std::uint64_t seed) {
  const int n = static_cast<int>(truth.size());
  if (n < 2) throw std::invalid_argument("generate_constraints: need >= 2 points");
  if (count < 0) throw std::invalid_argument("generate_constraints: negative count");
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  if (count > total)
    throw std::invalid_argument(
        "generate_constraints: count exceeds the number of distinct pairs");

  Rng rng(seed);
  ConstraintSet out;
  std::set<std::pair<int, int>> chosen;
  if (count > total / 2) {
    // dense request: shuffle the full pair list
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    for (std::size_t i = pairs.size(); i > 1; --i)
      std::swap(pairs[i - 1], pairs[rng.uniform_index(i)]);
    for (int t = 0; t < count; ++t) chosen.insert(pairs[static_cast<std::size_t>(t)]);
  } else {
    while (static_cast<int>(chosen.size()) < count) {
      const int i = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
      int j = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n - 1)));
      if (j >= i) ++j;
      chosen.emplace(std::min(i, j), std::max(i, j));
    }
  }
  for (const auto& [i, j] : chosen) {
    if (truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)])
      out.add_must(i, j, 1.0);
    else
      out.add_cannot(i, j, 1.0);
  }
  return out;
}

}  // namespace cosc
