#pragma once

#include <vector>

namespace cyclecover {

/// Maximum matching in a bipartite graph given by left-side adjacency lists
/// (Hopcroft-Karp). Returns match_left[i] = matched right vertex or -1.
std::vector<int> max_bipartite_matching(int n_left, int n_right, const std::vector<std::vector<int>>& adj_left);

/// Size of a matching returned by max_bipartite_matching.
int matching_size(const std::vector<int>& match_left);

}  // namespace cyclecover
