#include "sgc/connectivity.hpp"

#include <stdexcept>

namespace sgc {

int ConnectivityReport::nonempty_clusters() const {
    int count = 0;
    for (const auto& pc : per_cluster)
        if (!pc.members.empty()) ++count;
    return count;
}

int ConnectivityReport::connected_clusters() const {
    int count = 0;
    for (const auto& pc : per_cluster)
        if (!pc.members.empty() && pc.connected) ++count;
    return count;
}

ConnectivityReport check_connectivity(const Graph& g, const Solution& s) {
    ConnectivityReport report;
    report.per_cluster.reserve(s.k);
    for (int c = 0; c < s.k; ++c) {
        ClusterConnectivity pc;
        pc.cluster = c;
        for (int i = 0; i < s.n; ++i)
            if (s.y[i][c]) pc.members.push_back(i);
        if (pc.members.empty()) {
            pc.component_count = 0;
            pc.connected = true;
            report.per_cluster.push_back(std::move(pc));
            continue;
        }
        std::vector<int> in_cluster(s.n, 0), seen(s.n, 0);
        for (int v : pc.members) in_cluster[v] = 1;
        int components = 0;
        for (int v : pc.members) {
            if (seen[v]) continue;
            ++components;
            std::vector<int> queue{v};
            seen[v] = 1;
            for (std::size_t q = 0; q < queue.size(); ++q)
                for (int nb : g.neighbors(queue[q]))
                    if (in_cluster[nb] && !seen[nb]) {
                        seen[nb] = 1;
                        queue.push_back(nb);
                    }
        }
        pc.component_count = components;
        pc.connected = components == 1;
        report.per_cluster.push_back(std::move(pc));
    }
    const int nonempty = report.nonempty_clusters();
    report.fraction_connected =
        nonempty == 0 ? 1.0
                      : static_cast<double>(report.connected_clusters()) / nonempty;
    return report;
}

LazyResult solve_with_lazy_connectivity(const Graph& g, const ClusterParams& p,
                                        const SolveLimits& limits, const SolverBackend& backend,
                                        int max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("lazy connectivity: max_rounds must be >= 1");
    ModelIR model = build_model(g, p);
    LazyResult result;
    for (int round = 1; round <= max_rounds; ++round) {
        result.solution = backend.solve(model, limits);
        result.rounds_used = round;
        if (!result.solution.has_values()) {
            // infeasible or unknown: nothing to check or cut
            result.report = ConnectivityReport{};
            result.report.per_cluster.clear();
            return result;
        }
        result.round_objectives.push_back(result.solution.objective);
        result.round_supports.push_back(result.solution.active_memberships());
        result.report = check_connectivity(g, result.solution);
        if (result.report.all_connected()) return result;
        if (round == max_rounds) {
            result.rounds_exhausted = true;
            return result;
        }
        model.add_constraint(nogood_cut(model, result.solution.active_memberships()));
    }
    return result;  // unreachable
}

}  // namespace sgc
