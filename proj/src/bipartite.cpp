//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemeval/bipartite.h"

#include <algorithm>

namespace chemeval {
namespace {
bool augment(const std::vector<std::vector<int>> &adjacency, int left,
             std::vector<char> &visited, std::vector<int> &left_match,
             std::vector<int> &right_match) {
  for (int right: adjacency[left]) {
    if (visited[right])
      continue;
    visited[right] = 1;
    if (right_match[right] < 0
        || augment(adjacency, right_match[right], visited, left_match,
                   right_match)) {
      left_match[left] = right;
      right_match[right] = left;
      return true;
    }
  }
  return false;
}
}  // namespace

int max_bipartite_matching(const std::vector<std::vector<int>> &adjacency,
                           int n_right, std::vector<int> &left_match,
                           std::vector<int> &right_match) {
  const int n_left = static_cast<int>(adjacency.size());
  left_match.resize(n_left, -1);
  right_match.resize(n_right, -1);

  int size = 0;
  for (int l = 0; l < n_left; ++l)
    size += left_match[l] >= 0;

  std::vector<char> visited(n_right);
  for (int l = 0; l < n_left; ++l) {
    if (left_match[l] >= 0)
      continue;
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(adjacency, l, visited, left_match, right_match))
      ++size;
  }
  return size;
}

int max_bipartite_matching(const std::vector<std::vector<int>> &adjacency,
                           int n_right) {
  std::vector<int> left_match, right_match;
  return max_bipartite_matching(adjacency, n_right, left_match, right_match);
}

}  // namespace chemeval
