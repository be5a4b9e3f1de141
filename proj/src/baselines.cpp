#include "sgc/baselines.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sgc {

std::string to_string(ClusteringOrigin o) {
    switch (o) {
        case ClusteringOrigin::MaxMax: return "MaxMax";
        case ClusteringOrigin::CliquePercolation: return "CliquePercolation";
        case ClusteringOrigin::MILP: return "MILP";
    }
    return "?";
}

SoftClustering maxmax(const Graph& g) {
    const int n = g.num_vertices();
    // max incident weight per vertex
    std::vector<std::int64_t> max_w(n, -1);
    for (const auto& e : g.edges()) {
        max_w[e.i] = std::max(max_w[e.i], e.w);
        max_w[e.j] = std::max(max_w[e.j], e.w);
    }
    // arcs u -> v when w(u,v) is maximal at v
    std::vector<std::vector<int>> out_arcs(n);
    for (const auto& e : g.edges()) {
        if (e.w == max_w[e.j]) out_arcs[e.i].push_back(e.j);
        if (e.w == max_w[e.i]) out_arcs[e.j].push_back(e.i);
    }
    for (auto& arcs : out_arcs) std::sort(arcs.begin(), arcs.end());

    auto descendants = [&](int root) {
        std::vector<int> seen(n, 0), queue{root};
        seen[root] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (int nb : out_arcs[queue[q]])
                if (!seen[nb]) {
                    seen[nb] = 1;
                    queue.push_back(nb);
                }
        std::sort(queue.begin(), queue.end());
        return queue;  // includes root
    };

    std::vector<int> is_root(n, 1);
    for (int v = 0; v < n; ++v) {
        if (!is_root[v]) continue;
        for (int d : descendants(v))
            if (d != v) is_root[d] = 0;
    }

    SoftClustering result;
    result.origin = ClusteringOrigin::MaxMax;
    result.n = n;
    for (int v = 0; v < n; ++v)
        if (is_root[v]) result.clusters.push_back(descendants(v));
    return result;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

void enumerate_cliques(const Graph& g, const std::vector<std::vector<int>>& adj, int k,
                       std::vector<int>& current, int min_next,
                       std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == k) {
        out.push_back(current);
        return;
    }
    for (int v = min_next; v < g.num_vertices(); ++v) {
        bool extends = true;
        for (int u : current)
            if (!std::binary_search(adj[u].begin(), adj[u].end(), v)) {
                extends = false;
                break;
            }
        if (!extends) continue;
        current.push_back(v);
        enumerate_cliques(g, adj, k, current, v + 1, out);
        current.pop_back();
    }
}

}  // namespace

SoftClustering clique_percolation(const Graph& g, int k, std::int64_t w_star) {
    if (k < 2) throw std::invalid_argument("clique percolation: k must be >= 2");
    // threshold: keep strictly heavier edges
    std::vector<Edge> kept;
    for (const auto& e : g.edges())
        if (e.w > w_star) kept.push_back(e);
    const Graph h(g.num_vertices(), std::move(kept));

    std::vector<std::vector<int>> adj(h.num_vertices());
    for (int v = 0; v < h.num_vertices(); ++v) adj[v] = h.neighbors(v);

    std::vector<std::vector<int>> cliques;
    std::vector<int> current;
    enumerate_cliques(h, adj, k, current, 0, cliques);

    SoftClustering result;
    result.origin = ClusteringOrigin::CliquePercolation;
    result.n = g.num_vertices();
    if (cliques.empty()) return result;

    // two k-cliques are adjacent iff they share a (k-1)-subset
    UnionFind uf(static_cast<int>(cliques.size()));
    std::map<std::vector<int>, int> subset_owner;
    for (int ci = 0; ci < static_cast<int>(cliques.size()); ++ci) {
        const auto& clique = cliques[ci];
        for (int drop = 0; drop < k; ++drop) {
            std::vector<int> subset;
            subset.reserve(k - 1);
            for (int idx = 0; idx < k; ++idx)
                if (idx != drop) subset.push_back(clique[idx]);
            auto [it, inserted] = subset_owner.emplace(std::move(subset), ci);
            if (!inserted) uf.unite(ci, it->second);
        }
    }

    std::map<int, std::vector<int>> members;  // component root -> vertices
    for (int ci = 0; ci < static_cast<int>(cliques.size()); ++ci) {
        auto& bucket = members[uf.find(ci)];
        bucket.insert(bucket.end(), cliques[ci].begin(), cliques[ci].end());
    }
    for (auto& [root, verts] : members) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        result.clusters.push_back(std::move(verts));
    }
    std::sort(result.clusters.begin(), result.clusters.end());
    return result;
}

}  // namespace sgc
