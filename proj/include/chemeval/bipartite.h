//
// chemeval - Copyright 2026 The chemeval Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMEVAL_BIPARTITE_H_
#define CHEMEVAL_BIPARTITE_H_

#include <vector>

namespace chemeval {

/// Maximum bipartite matching by augmenting paths (Kuhn's algorithm).
///
/// adjacency[l] lists the right vertices that left vertex l may take, in
/// preference order. `left_match`/`right_match` may carry a partial matching
/// to start from (-1 = free); on return they hold a maximum matching that
/// keeps every initially matched vertex matched. Returns the matching size.
int max_bipartite_matching(const std::vector<std::vector<int>> &adjacency,
                           int n_right, std::vector<int> &left_match,
                           std::vector<int> &right_match);

/// Convenience overload starting from the empty matching.
int max_bipartite_matching(const std::vector<std::vector<int>> &adjacency,
                           int n_right);

}  // namespace chemeval

#endif  // CHEMEVAL_BIPARTITE_H_
