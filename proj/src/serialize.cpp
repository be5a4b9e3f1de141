#include "sgc/serialize.hpp"

#include <json.hpp>

namespace sgc {

using nlohmann::json;

json solution_to_json(const Solution& s) {
    json j;
    j["origin"] = "MILP";
    j["n"] = s.n;
    j["k"] = s.k;
    j["status"] = to_string(s.status);
    j["objective"] = s.objective;
    j["mip_gap"] = s.mip_gap;
    j["solve_seconds"] = s.solve_seconds;
    j["clusters"] = s.clusters();
    j["y"] = s.y;
    j["x"] = s.x;
    if (s.has_aux) j["aux"] = s.aux;
    return j;
}

Solution solution_from_json(const json& j) {
    Solution s;
    s.n = j.at("n").get<int>();
    s.k = j.at("k").get<int>();
    const std::string status = j.at("status").get<std::string>();
    if (status == "optimal") s.status = SolveStatus::Optimal;
    else if (status == "feasible") s.status = SolveStatus::Feasible;
    else if (status == "infeasible") s.status = SolveStatus::Infeasible;
    else s.status = SolveStatus::Unknown;
    s.objective = j.at("objective").get<double>();
    s.mip_gap = j.value("mip_gap", 0.0);
    s.solve_seconds = j.value("solve_seconds", 0.0);
    s.y = j.at("y").get<std::vector<std::vector<int>>>();
    s.x = j.at("x").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(s.y.size()) != s.n || static_cast<int>(s.x.size()) != s.n)
        throw std::runtime_error("solution json: y/x shape does not match n");
    for (const auto& row : s.y)
        if (static_cast<int>(row.size()) != s.k)
            throw std::runtime_error("solution json: y shape does not match k");
    for (const auto& row : s.x)
        if (static_cast<int>(row.size()) != s.k)
            throw std::runtime_error("solution json: x shape does not match k");
    if (j.contains("aux")) {
        s.aux = j.at("aux").get<std::map<std::string, double>>();
        s.has_aux = true;
    }
    return s;
}

json report_to_json(const ClusterReport& r) {
    json j;
    json kappa = json::array();
    for (const auto& [pair, value] : r.kappa)
        kappa.push_back({{"c1", pair.first}, {"c2", pair.second}, {"kappa", value}});
    j["kappa"] = std::move(kappa);
    json assoc = json::array();
    for (const auto& [c, value] : r.assoc) assoc.push_back({{"cluster", c}, {"assoc", value}});
    j["assoc"] = std::move(assoc);
    j["total_cut"] = r.total_cut;
    j["total_assoc"] = r.total_assoc;
    j["ratio_r"] = r.ratio_defined ? json(r.ratio_r) : json("undefined");
    j["ratio_sum_objective"] = [&] {
        const double v = ratio_objective_value(r);
        return std::isfinite(v) ? json(v) : json("infinite");
    }();
    j["membership_ok"] = r.membership_ok;
    j["balance_ok"] = r.balance_ok;
    j["overlap_ok"] = r.overlap_ok;
    json conn;
    conn["fraction_connected"] = r.connectivity.fraction_connected;
    json per_cluster = json::array();
    for (const auto& pc : r.connectivity.per_cluster)
        per_cluster.push_back({{"cluster", pc.cluster},
                               {"members", pc.members},
                               {"connected", pc.connected},
                               {"components", pc.component_count}});
    conn["per_cluster"] = std::move(per_cluster);
    j["connectivity"] = std::move(conn);
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back(
            {{"family", to_string(v.family)}, {"constraint", v.constraint}, {"amount", v.amount}});
    j["violations"] = std::move(violations);
    return j;
}

json clustering_to_json(const SoftClustering& c) {
    json j;
    j["origin"] = to_string(c.origin);
    j["n"] = c.n;
    j["clusters"] = c.clusters;
    return j;
}

json class_stats_to_json(const BatchStats& stats) {
    json j = json::array();
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& c : stats.classes) {
        j.push_back({{"class", c.klass},
                     {"solved", c.solved},
                     {"unsolved", c.unsolved},
                     {"opt_mean", opt(c.opt_mean)},
                     {"opt_std", opt(c.opt_std)},
                     {"gap_mean", opt(c.gap_mean)},
                     {"gap_std", opt(c.gap_std)},
                     {"r_mean", opt(c.r_mean)},
                     {"r_std", opt(c.r_std)},
                     {"con_percent", c.con_percent}});
    }
    return j;
}

}  // namespace sgc
