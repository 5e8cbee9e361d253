#pragma once

#include <vector>

namespace gsdbench {

// Covering edges of a DAG given as adjacency lists (succ[i] = successors of
// node i, no self edges). An edge (a,b) survives exactly when b cannot be
// reached from a through any other successor of a. Input order is irrelevant;
// output lists are sorted.
std::vector<std::vector<int>> transitive_reduction(
    const std::vector<std::vector<int>>& succ);

}  // namespace gsdbench
