// Comparison methods: MaxMax (maximal-affinity roots and descendants) and
// k-clique percolation over a weight-thresholded graph.
#ifndef SGC_BASELINES_HPP
#define SGC_BASELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

enum class ClusteringOrigin { MaxMax, CliquePercolation, MILP };

std::string to_string(ClusteringOrigin o);

struct SoftClustering {
    ClusteringOrigin origin = ClusteringOrigin::MILP;
    int n = 0;
    std::vector<std::vector<int>> clusters;  // sorted member lists, overlaps allowed
};

/// Build the affinity digraph (arc u -> v whenever w(u,v) attains the
/// maximum weight among v's incident edges, ties kept), scan vertices in
/// ascending id unmarking proper descendants of surviving roots, and emit
/// {root} union descendants(root) per remaining root. Isolated vertices
/// stay singleton roots.
SoftClustering maxmax(const Graph& g);

/// Drop edges with weight <= w_star, enumerate k-cliques of the remaining
/// graph, join cliques sharing k-1 vertices, and emit the vertex union of
/// each clique component. No k-cliques yields an empty clustering.
SoftClustering clique_percolation(const Graph& g, int k, std::int64_t w_star);

}  // namespace sgc

#endif
