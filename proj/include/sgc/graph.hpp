// Undirected weighted graph, edge-list ingestion, random instance
// generation, and the common-neighbour weight transformation.
#ifndef SGC_GRAPH_HPP
#define SGC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace sgc {

struct Edge {
    int i = 0;           // smaller endpoint
    int j = 0;           // larger endpoint
    std::int64_t w = 1;  // non-negative integer weight

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected graph with vertices 0..n-1 and integer weights.
/// Edges are stored normalised (i < j) and sorted lexicographically.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    bool adjacent(int i, int j) const;
    /// Index of edge (i, j) in the sorted edge list, or -1 if absent.
    int edge_index(int i, int j) const;
    const std::vector<int>& neighbors(int v) const;

    /// Maximum edge weight M_w; 0 for edgeless graphs.
    std::int64_t max_weight() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::unordered_map<std::int64_t, int> edge_lookup_;  // i * n + j -> edge index
};

struct GeneratorConfig {
    int n = 15;
    double density = 0.15;       // fraction of the n(n-1)/2 possible edges
    std::int64_t max_weight = 50;
    std::uint64_t seed = 1;
};

/// Parse "i j [w]" lines ('#' comments allowed, missing weight defaults
/// to 1). Vertex count is 1 + the largest id seen. Malformed lines,
/// self-loops, duplicate pairs and negative weights throw with the
/// offending line number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// Write the graph as parseable "i j w" lines, sorted, one edge per line.
void save_edge_list(const Graph& g, std::ostream& out);

/// Sample round(density * n(n-1)/2) distinct edges uniformly without
/// replacement (Floyd's algorithm over pair indices, mt19937_64 with
/// rejection-sampled bounded draws), then draw each weight uniformly in
/// [1, max_weight] in sorted edge order. Bit-identical per seed.
Graph generate_random(const GeneratorConfig& cfg);

/// Replace every edge weight by 1 + |common neighbours of its endpoints|.
Graph transform_unit_weights(const Graph& g);

/// Connected components as sorted vertex lists, ordered by smallest
/// contained vertex.
std::vector<std::vector<int>> connected_components(const Graph& g);

}  // namespace sgc

#endif
