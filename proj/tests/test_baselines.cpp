#include <doctest.h>

#include <algorithm>
#include <set>

#include "sgc/baselines.hpp"
#include "sgc/graph.hpp"

using namespace sgc;

namespace {

// Independent reference scan for MaxMax: reachability via boolean matrix
// closure instead of per-root searches.
std::vector<std::vector<int>> maxmax_reference(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<std::int64_t> max_w(n, -1);
    for (const auto& e : g.edges()) {
        max_w[e.i] = std::max(max_w[e.i], e.w);
        max_w[e.j] = std::max(max_w[e.j], e.w);
    }
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges()) {
        if (e.w == max_w[e.j]) reach[e.i][e.j] = true;
        if (e.w == max_w[e.i]) reach[e.j][e.i] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<bool> root(n, true);
    for (int v = 0; v < n; ++v) {
        if (!root[v]) continue;
        for (int d = 0; d < n; ++d)
            if (d != v && reach[v][d]) root[d] = false;
    }
    std::vector<std::vector<int>> clusters;
    for (int v = 0; v < n; ++v) {
        if (!root[v]) continue;
        std::vector<int> cluster{v};
        for (int d = 0; d < n; ++d)
            if (d != v && reach[v][d]) cluster.push_back(d);
        std::sort(cluster.begin(), cluster.end());
        clusters.push_back(std::move(cluster));
    }
    return clusters;
}

Graph connected_unit_graph(int n, double density, std::uint64_t seed) {
    for (std::uint64_t s = seed; s < seed + 50; ++s) {
        const Graph g = generate_random({n, density, 1, s});
        if (connected_components(g).size() == 1) return g;
    }
    throw std::runtime_error("no connected sample found");
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("maxmax weighted path trace") {
    // w(0,1) = 5 is maximal at both endpoints, w(1,2) = 1 only at vertex 2;
    // scanning leaves root 0 owning everything
    const Graph g(3, {{0, 1, 5}, {1, 2, 1}});
    const SoftClustering c = maxmax(g);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.clusters[0] == std::vector<int>{0, 1, 2});
    CHECK(c.origin == ClusteringOrigin::MaxMax);
}

TEST_CASE("maxmax is trivial on connected unit graphs") {
    for (std::uint64_t seed : {3, 17, 29}) {
        const Graph g = connected_unit_graph(8, 0.4, seed);
        const SoftClustering c = maxmax(g);
        REQUIRE(c.clusters.size() == 1);
        CHECK(c.clusters[0].size() == 8);
    }
}

TEST_CASE("maxmax splits unit components") {
    const Graph g(6, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}});
    const SoftClustering c = maxmax(g);
    REQUIRE(c.clusters.size() == 2);
    CHECK(c.clusters[0] == std::vector<int>{0, 1, 2});
    CHECK(c.clusters[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("maxmax keeps isolated vertices as singleton roots") {
    const Graph g(4, {{1, 2, 3}});
    const SoftClustering c = maxmax(g);
    REQUIRE(c.clusters.size() == 3);
    CHECK(c.clusters[0] == std::vector<int>{0});
    CHECK(c.clusters[1] == std::vector<int>{1, 2});
    CHECK(c.clusters[2] == std::vector<int>{3});
}

TEST_CASE("maxmax matches the independent reference scan") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = generate_random({9, 0.35, 7, seed});
        CAPTURE(seed);
        CHECK(maxmax(g).clusters == maxmax_reference(g));
    }
}

TEST_CASE("maxmax covers every non-isolated vertex") {
    const Graph g = generate_random({10, 0.3, 6, 77});
    const SoftClustering c = maxmax(g);
    std::set<int> covered;
    for (const auto& cl : c.clusters) covered.insert(cl.begin(), cl.end());
    for (int v = 0; v < 10; ++v) CHECK(covered.count(v) == 1);  // roots cover everyone
}

TEST_CASE("clique percolation on two triangles sharing an edge") {
    const Graph g(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    const SoftClustering c = clique_percolation(g, 3, 0);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.clusters[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(c.origin == ClusteringOrigin::CliquePercolation);
}

TEST_CASE("clique percolation separates disjoint triangles") {
    const Graph g(6, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}, {3, 5, 1}, {4, 5, 1}});
    const SoftClustering c = clique_percolation(g, 3, 0);
    REQUIRE(c.clusters.size() == 2);
    CHECK(c.clusters[0] == std::vector<int>{0, 1, 2});
    CHECK(c.clusters[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("heavy edge outside any triangle is never covered") {
    // edge (3,4) carries the largest weight but its endpoints share no
    // common neighbour, so no 3-clique community contains the pair
    const Graph g(5, {{0, 1, 2}, {0, 2, 2}, {1, 2, 2}, {2, 3, 1}, {3, 4, 9}});
    const SoftClustering c = clique_percolation(g, 3, 0);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.clusters[0] == std::vector<int>{0, 1, 2});
    for (const auto& cl : c.clusters) {
        const bool has3 = std::binary_search(cl.begin(), cl.end(), 3);
        const bool has4 = std::binary_search(cl.begin(), cl.end(), 4);
        CHECK_FALSE((has3 && has4));
    }
}

TEST_CASE("k = 2 percolation gives thresholded components") {
    const Graph g(5, {{0, 1, 5}, {1, 2, 1}, {3, 4, 5}});
    const SoftClustering c = clique_percolation(g, 2, 1);  // keeps only weight > 1
    REQUIRE(c.clusters.size() == 2);
    CHECK(c.clusters[0] == std::vector<int>{0, 1});
    CHECK(c.clusters[1] == std::vector<int>{3, 4});
}

TEST_CASE("no cliques yields an empty clustering") {
    const Graph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});  // path, no triangle
    CHECK(clique_percolation(g, 3, 0).clusters.empty());
    CHECK_THROWS_AS(clique_percolation(g, 1, 0), std::invalid_argument);
}

TEST_CASE("communities are unions of k-cliques of size >= k") {
    for (std::uint64_t seed : {5, 6, 7}) {
        const Graph g = generate_random({9, 0.5, 4, seed});
        const SoftClustering c = clique_percolation(g, 3, 1);
        for (const auto& cl : c.clusters) {
            CHECK(cl.size() >= 3);
            // every member lies in some triangle inside the community
            for (int v : cl) {
                bool in_triangle = false;
                for (int a : cl)
                    for (int b : cl) {
                        if (a >= b || a == v || b == v) continue;
                        if (g.edge_index(v, a) >= 0 && g.edges()[g.edge_index(v, a)].w > 1 &&
                            g.edge_index(v, b) >= 0 && g.edges()[g.edge_index(v, b)].w > 1 &&
                            g.edge_index(a, b) >= 0 && g.edges()[g.edge_index(a, b)].w > 1)
                            in_triangle = true;
                    }
                CHECK(in_triangle);
            }
        }
    }
}

TEST_CASE("raising the threshold only fragments communities") {
    for (std::uint64_t seed : {11, 12}) {
        const Graph g = generate_random({10, 0.6, 6, seed});
        const SoftClustering lo = clique_percolation(g, 3, 1);
        const SoftClustering hi = clique_percolation(g, 3, 3);
        for (const auto& community : hi.clusters) {
            bool contained = false;
            for (const auto& host : lo.clusters)
                if (std::includes(host.begin(), host.end(), community.begin(), community.end()))
                    contained = true;
            CHECK(contained);
        }
    }
}

}  // TEST_SUITE
