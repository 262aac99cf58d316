#pragma once

#include "qaoabench/graph.hpp"

namespace qaoabench {

// Exact graph edit distance between small unlabeled graphs under unit edge
// insertion/deletion, unit node insertion/deletion and zero-cost node
// substitution. With these costs substituting is never worse than a
// delete/insert pair, so the distance equals |n1 - n2| plus the minimum over
// vertex bijections pi (smaller graph padded with isolated vertices) of
// |E1 symmetric-difference pi(E2)|. Computed by branch-and-bound over vertex
// assignments with an admissible degree-based lower bound.
//
// Throws CapacityError when either graph exceeds max_vertices.
int graph_edit_distance(const Graph& g1, const Graph& g2, int max_vertices = 12);

}  // namespace qaoabench
