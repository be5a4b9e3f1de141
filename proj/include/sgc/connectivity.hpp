// Post-hoc cluster connectivity checks and the lazy no-good-cut loop.
#ifndef SGC_CONNECTIVITY_HPP
#define SGC_CONNECTIVITY_HPP

#include <vector>

#include "sgc/graph.hpp"
#include "sgc/solver.hpp"

namespace sgc {

struct ClusterConnectivity {
    int cluster = 0;
    std::vector<int> members;  // from y
    bool connected = true;     // singletons count as connected
    int component_count = 0;   // 0 for empty clusters
};

struct ConnectivityReport {
    std::vector<ClusterConnectivity> per_cluster;
    // connected nonempty clusters / nonempty clusters; 1.0 when no cluster
    // is nonempty
    double fraction_connected = 1.0;

    bool all_connected() const { return fraction_connected >= 1.0; }
    int nonempty_clusters() const;
    int connected_clusters() const;
};

ConnectivityReport check_connectivity(const Graph& g, const Solution& s);

struct LazyResult {
    Solution solution;
    int rounds_used = 0;
    ConnectivityReport report;
    bool rounds_exhausted = false;  // cap hit with a disconnected incumbent
    // incumbent trail, one entry per round with a usable solution
    std::vector<double> round_objectives;
    std::vector<std::vector<std::pair<int, int>>> round_supports;
};

/// Solve; while some cluster is disconnected and rounds remain, cut off the
/// incumbent membership support with a no-good row and re-solve.
LazyResult solve_with_lazy_connectivity(const Graph& g, const ClusterParams& p,
                                        const SolveLimits& limits, const SolverBackend& backend,
                                        int max_rounds = 10);

}  // namespace sgc

#endif
