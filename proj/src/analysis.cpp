#include "sgc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace sgc {

namespace {

constexpr double kTol = 1e-6;
constexpr double kZero = 1e-9;  // metric sums below this count as zero

}  // namespace

std::string to_string(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::Membership: return "(a) membership";
        case ConstraintFamily::ClusterLogic: return "(b) cluster logic";
        case ConstraintFamily::Balance: return "(c) balance";
        case ConstraintFamily::Overlap: return "(d) overlap";
        case ConstraintFamily::Intersection: return "(e) intersection";
        case ConstraintFamily::CutIndicator: return "(f) cut indicators";
        case ConstraintFamily::CutLinear: return "(g) cut linearization";
        case ConstraintFamily::Association: return "(h) association";
        case ConstraintFamily::Connectivity: return "(i) connectivity";
        case ConstraintFamily::Time: return "(j) time";
        case ConstraintFamily::MinSize: return "(35) min size";
    }
    return "?";
}

bool ClusterReport::family_violated(ConstraintFamily f) const {
    for (const auto& v : violations)
        if (v.family == f) return true;
    return false;
}

ClusterReport validate_solution(const Graph& g, const ClusterParams& p, const Solution& s) {
    const int n = s.n;
    const int K = s.k;
    if (n != g.num_vertices())
        throw std::runtime_error("validate: solution vertex count does not match instance");
    if (K != p.k) throw std::runtime_error("validate: solution cluster count does not match params");

    ClusterReport report;
    auto flag = [&](ConstraintFamily f, std::string name, double amount) {
        if (amount > kTol) report.violations.push_back({f, std::move(name), amount});
    };
    auto tag2 = [](int a, int b) { return std::to_string(a) + "_" + std::to_string(b); };
    auto tag3 = [&](int a, int b, int c) { return std::to_string(a) + "_" + tag2(b, c); };

    const auto& edges = g.edges();
    const int m = g.num_edges();
    auto yv = [&](int i, int c) -> double { return s.y[i][c]; };
    auto xv = [&](int i, int c) -> double { return s.x[i][c]; };

    // Derived indicator values; these drive the metric recomputation and,
    // when no auxiliaries were retained, the row checks as well.
    auto derived_L = [&](int i) {
        for (int c = 0; c < K; ++c)
            if (s.y[i][c]) return 1.0;
        return 0.0;
    };
    auto derived_t = [&](int i, int c1, int c2) {
        return s.y[i][c1] && s.y[i][c2] ? 1.0 : 0.0;
    };
    auto derived_eta = [&](int e, int c1, int c2) {
        return derived_t(edges[e].i, c1, c2) * derived_t(edges[e].j, c1, c2);
    };
    auto derived_s = [&](int e, int c1, int c2) {
        return s.y[edges[e].i][c1] && s.y[edges[e].j][c2] && derived_eta(e, std::min(c1, c2), std::max(c1, c2)) == 0.0
                   ? 1.0
                   : 0.0;
    };
    auto derived_z = [&](int c, int e) { return s.y[edges[e].i][c] && s.y[edges[e].j][c] ? 1.0 : 0.0; };

    const bool aux = s.has_aux;
    auto used_L = [&](int i) { return aux ? s.aux_value(var_name::L(i)) : derived_L(i); };
    auto used_t = [&](int i, int c1, int c2) {
        return aux ? s.aux_value(var_name::t(i, std::min(c1, c2), std::max(c1, c2)))
                   : derived_t(i, c1, c2);
    };
    auto used_eta = [&](int e, int c1, int c2) {
        return aux ? s.aux_value(var_name::eta(e, std::min(c1, c2), std::max(c1, c2)))
                   : derived_eta(e, c1, c2);
    };
    auto used_s = [&](int e, int c1, int c2) {
        return aux ? s.aux_value(var_name::s(e, c1, c2)) : derived_s(e, c1, c2);
    };
    auto used_z = [&](int c, int e) { return aux ? s.aux_value(var_name::z(c, e)) : derived_z(c, e); };
    auto used_gam = [&](int c, int e) {
        return aux ? s.aux_value(var_name::gam(c, e)) : derived_z(c, e);
    };

    // (a) membership bounds
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c) {
            flag(ConstraintFamily::Membership, "memb_ub_" + tag2(i, c), xv(i, c) - yv(i, c));
            flag(ConstraintFamily::Membership, "memb_lb_" + tag2(i, c), p.mu * yv(i, c) - xv(i, c));
        }

    // (b) vertex-in-some-cluster logic
    for (int i = 0; i < n; ++i) {
        const double L = used_L(i);
        double ysum = 0.0, xsum = 0.0;
        for (int c = 0; c < K; ++c) {
            ysum += yv(i, c);
            xsum += xv(i, c);
            flag(ConstraintFamily::ClusterLogic, "inclust_" + tag2(i, c), yv(i, c) - L);
        }
        flag(ConstraintFamily::ClusterLogic, "lsum_" + std::to_string(i), L - ysum);
        flag(ConstraintFamily::ClusterLogic, "xsum_" + std::to_string(i), std::abs(xsum - L));
    }

    // (c) equal balance
    std::vector<double> cluster_sum(K, 0.0);
    for (int c = 0; c < K; ++c)
        for (int i = 0; i < n; ++i) cluster_sum[c] += xv(i, c);
    for (int c1 = 0; c1 < K; ++c1)
        for (int c2 = 0; c2 < K; ++c2) {
            if (c1 == c2) continue;
            flag(ConstraintFamily::Balance, "bal_lo_" + tag2(c1, c2),
                 (1.0 - p.delta) * cluster_sum[c1] - cluster_sum[c2]);
            flag(ConstraintFamily::Balance, "bal_hi_" + tag2(c1, c2),
                 cluster_sum[c2] - (1.0 + p.delta) * cluster_sum[c1]);
        }

    // (d) overlap indicators and cardinality caps
    for (int c1 = 0; c1 < K; ++c1)
        for (int c2 = c1 + 1; c2 < K; ++c2) {
            double tsum = 0.0, y1sum = 0.0, y2sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double t = used_t(i, c1, c2);
                tsum += t;
                y1sum += yv(i, c1);
                y2sum += yv(i, c2);
                flag(ConstraintFamily::Overlap, "ovl_up_" + tag3(i, c1, c2),
                     yv(i, c1) + yv(i, c2) - t - 1.0);
                flag(ConstraintFamily::Overlap, "ovl_c1_" + tag3(i, c1, c2), t - yv(i, c1));
                flag(ConstraintFamily::Overlap, "ovl_c2_" + tag3(i, c1, c2), t - yv(i, c2));
            }
            flag(ConstraintFamily::Overlap, "ovlcard_a_" + tag2(c1, c2), tsum - p.nu * y1sum);
            flag(ConstraintFamily::Overlap, "ovlcard_b_" + tag2(c1, c2), tsum - p.nu * y2sum);
        }

    // (e) pair-intersection indicators
    for (int e = 0; e < m; ++e)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2) {
                const double ti = used_t(edges[e].i, c1, c2);
                const double tj = used_t(edges[e].j, c1, c2);
                const double et = used_eta(e, c1, c2);
                flag(ConstraintFamily::Intersection, "eta_up_" + tag3(e, c1, c2), ti + tj - et - 1.0);
                flag(ConstraintFamily::Intersection, "eta_i_" + tag3(e, c1, c2), et - ti);
                flag(ConstraintFamily::Intersection, "eta_j_" + tag3(e, c1, c2), et - tj);
            }

    // (f) cut indicators, (g) their linearization
    for (int e = 0; e < m; ++e) {
        const auto& ed = edges[e];
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                const double sval = used_s(e, c1, c2);
                const double et = used_eta(e, c1, c2);
                flag(ConstraintFamily::CutIndicator, "cut_up_" + tag3(e, c1, c2),
                     yv(ed.i, c1) + yv(ed.j, c2) - et - sval - 1.0);
                flag(ConstraintFamily::CutIndicator, "cut_i_" + tag3(e, c1, c2),
                     sval - yv(ed.i, c1));
                flag(ConstraintFamily::CutIndicator, "cut_j_" + tag3(e, c1, c2),
                     sval - yv(ed.j, c2));
                flag(ConstraintFamily::CutIndicator, "cut_eta_" + tag3(e, c1, c2),
                     sval + et - 1.0);
                if (aux) {
                    const double ti = s.aux_value(var_name::taui(e, c1, c2));
                    const double tj = s.aux_value(var_name::tauj(e, c1, c2));
                    flag(ConstraintFamily::CutLinear, "taui_ub_x_" + tag3(e, c1, c2),
                         ti - xv(ed.i, c1));
                    flag(ConstraintFamily::CutLinear, "taui_ub_s_" + tag3(e, c1, c2), ti - sval);
                    flag(ConstraintFamily::CutLinear, "taui_lb_" + tag3(e, c1, c2),
                         sval + xv(ed.i, c1) - 1.0 - ti);
                    flag(ConstraintFamily::CutLinear, "tauj_ub_x_" + tag3(e, c1, c2),
                         tj - xv(ed.j, c2));
                    flag(ConstraintFamily::CutLinear, "tauj_ub_s_" + tag3(e, c1, c2), tj - sval);
                    flag(ConstraintFamily::CutLinear, "tauj_lb_" + tag3(e, c1, c2),
                         sval + xv(ed.j, c2) - 1.0 - tj);
                    // pointwise product exactness for integral s
                    flag(ConstraintFamily::CutLinear, "taui_exact_" + tag3(e, c1, c2),
                         std::abs(ti - xv(ed.i, c1) * sval));
                    flag(ConstraintFamily::CutLinear, "tauj_exact_" + tag3(e, c1, c2),
                         std::abs(tj - xv(ed.j, c2) * sval));
                }
            }
    }

    // (h) association indicators and linearization
    for (int c = 0; c < K; ++c)
        for (int e = 0; e < m; ++e) {
            const auto& ed = edges[e];
            const double zval = used_z(c, e);
            flag(ConstraintFamily::Association, "asc_up_" + tag2(c, e),
                 yv(ed.i, c) + yv(ed.j, c) - zval - 1.0);
            flag(ConstraintFamily::Association, "asc_i_" + tag2(c, e), zval - yv(ed.i, c));
            flag(ConstraintFamily::Association, "asc_j_" + tag2(c, e), zval - yv(ed.j, c));
            if (aux) {
                const double pi = s.aux_value(var_name::pii(c, e));
                const double pj = s.aux_value(var_name::pij(c, e));
                flag(ConstraintFamily::Association, "pii_ub_x_" + tag2(c, e), pi - xv(ed.i, c));
                flag(ConstraintFamily::Association, "pii_ub_z_" + tag2(c, e), pi - zval);
                flag(ConstraintFamily::Association, "pii_lb_" + tag2(c, e),
                     zval + xv(ed.i, c) - 1.0 - pi);
                flag(ConstraintFamily::Association, "pij_ub_x_" + tag2(c, e), pj - xv(ed.j, c));
                flag(ConstraintFamily::Association, "pij_ub_z_" + tag2(c, e), pj - zval);
                flag(ConstraintFamily::Association, "pij_lb_" + tag2(c, e),
                     zval + xv(ed.j, c) - 1.0 - pj);
                flag(ConstraintFamily::Association, "pii_exact_" + tag2(c, e),
                     std::abs(pi - xv(ed.i, c) * zval));
                flag(ConstraintFamily::Association, "pij_exact_" + tag2(c, e),
                     std::abs(pj - xv(ed.j, c) * zval));
            }
        }

    // (i) connectivity rows
    for (int c = 0; c < K; ++c) {
        double ysum = 0.0, gsum = 0.0;
        for (int i = 0; i < n; ++i) ysum += yv(i, c);
        for (int e = 0; e < m; ++e) {
            const auto& ed = edges[e];
            const double gv = used_gam(c, e);
            gsum += gv;
            flag(ConstraintFamily::Connectivity, "conn_gi_" + tag2(c, e), gv - yv(ed.i, c));
            flag(ConstraintFamily::Connectivity, "conn_gj_" + tag2(c, e), gv - yv(ed.j, c));
        }
        flag(ConstraintFamily::Connectivity, "conn_span_" + std::to_string(c), ysum - 1.0 - gsum);
        for (int i = 0; i < n; ++i) {
            double zsum = 0.0;
            for (int j : g.neighbors(i)) zsum += used_z(c, g.edge_index(i, j));
            flag(ConstraintFamily::Connectivity, "conn_deg_" + tag2(i, c), yv(i, c) - zsum);
        }
    }

    // (j) arrival-time rows, checkable only when times were retained
    if (p.enable_time_constraints && aux) {
        for (int i = 0; i < n; ++i) {
            const double t = s.aux_value(var_name::tt(i));
            flag(ConstraintFamily::Time, "tt_lb_" + std::to_string(i), -t);
            flag(ConstraintFamily::Time, "tt_ub_" + std::to_string(i), t - n);
        }
        for (int c = 0; c < K; ++c)
            for (int e = 0; e < m; ++e) {
                const auto& ed = edges[e];
                const double gv = used_gam(c, e);
                const double dt = s.aux_value(var_name::tt(ed.j)) - s.aux_value(var_name::tt(ed.i));
                flag(ConstraintFamily::Time, "time_lb_" + tag2(c, e),
                     1.0 - (n + 1.0) * (1.0 - gv) - dt);
                flag(ConstraintFamily::Time, "time_ub_" + tag2(c, e),
                     dt - 1.0 - n * (1.0 - gv));
            }
    }

    // (35) minimum total membership
    if (p.min_size_enabled()) {
        double total = 0.0;
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < K; ++c) total += yv(i, c);
        flag(ConstraintFamily::MinSize, "minsize", p.sigma * n - total);
    }

    // metrics from first principles (indicators re-derived from y)
    for (int c1 = 0; c1 < K; ++c1)
        for (int c2 = 0; c2 < K; ++c2) {
            if (c1 == c2) continue;
            double kappa = 0.0;
            for (int e = 0; e < m; ++e)
                if (derived_s(e, c1, c2) > 0.5)
                    kappa += static_cast<double>(edges[e].w) * (xv(edges[e].i, c1) + xv(edges[e].j, c2));
            report.kappa[{c1, c2}] = kappa;
            report.total_cut += kappa;
        }
    for (int c = 0; c < K; ++c) {
        double assoc = 0.0;
        for (int e = 0; e < m; ++e)
            if (derived_z(c, e) > 0.5)
                assoc += static_cast<double>(edges[e].w) * (xv(edges[e].i, c) + xv(edges[e].j, c));
        report.assoc[c] = assoc;
        report.total_assoc += assoc;
    }
    if (report.total_assoc > kZero) {
        report.ratio_r = report.total_cut / report.total_assoc;
    } else if (report.total_cut > kZero) {
        report.ratio_r = std::numeric_limits<double>::infinity();
        report.ratio_defined = false;
    } else {
        report.ratio_r = 0.0;
    }

    report.membership_ok = !report.family_violated(ConstraintFamily::Membership) &&
                           !report.family_violated(ConstraintFamily::ClusterLogic);
    report.balance_ok = !report.family_violated(ConstraintFamily::Balance);
    report.overlap_ok = !report.family_violated(ConstraintFamily::Overlap);
    report.connectivity = check_connectivity(g, s);
    return report;
}

double ratio_objective_value(const ClusterReport& report) {
    double sum = 0.0;
    for (const auto& [pair, kappa] : report.kappa) {
        const double denom = report.assoc.at(pair.first) + report.assoc.at(pair.second);
        if (denom > kZero) {
            sum += kappa / denom;
        } else if (kappa > kZero) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Epsilon-constraint sweep
// ---------------------------------------------------------------------------

namespace {

SweepRow solved_row(const Graph& g, const ClusterParams& p, const Solution& sol,
                    std::string label, double ell) {
    SweepRow row;
    row.label = std::move(label);
    row.ell = ell;
    row.status = sol.status;
    row.feasible = sol.has_values();
    row.seconds = sol.solve_seconds;
    if (row.feasible) {
        row.objective = sol.objective;
        const ClusterReport report = validate_solution(g, p, sol);
        row.total_cut = report.total_cut;
        row.total_assoc = report.total_assoc;
        row.ratio_sum = ratio_objective_value(report);
    }
    return row;
}

}  // namespace

SweepTable epsilon_sweep(const Graph& g, const ClusterParams& p, const SolveLimits& limits,
                         const SolverBackend& backend, int steps) {
    if (steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
    SweepTable table;

    ClusterParams p_cut = p;
    p_cut.objective = Objective::MinCut;
    p_cut.assoc_lower_bound.reset();
    Solution cut_sol = backend.solve(build_model(g, p_cut), limits);
    SweepRow first = solved_row(g, p_cut, cut_sol, "mincut", 0.0);
    table.w1 = first.total_assoc;
    table.rows.push_back(first);

    ClusterParams p_assoc = p;
    p_assoc.objective = Objective::MaxAssociation;
    p_assoc.assoc_lower_bound.reset();
    Solution assoc_sol = backend.solve(build_model(g, p_assoc), limits);
    SweepRow last = solved_row(g, p_assoc, assoc_sol, "maxassoc", 0.0);
    table.w2 = last.feasible ? assoc_sol.objective : 0.0;

    for (int j = 1; j <= steps; ++j) {
        const double ell = (static_cast<double>(j) / steps) * (table.w2 - table.w1);
        ClusterParams pj = p_cut;
        pj.assoc_lower_bound = ell;
        Solution sol = backend.solve(build_model(g, pj), limits);
        table.rows.push_back(solved_row(g, pj, sol, "j=" + std::to_string(j), ell));
    }
    table.rows.push_back(last);
    return table;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
    out << "label,ell,status,objective,total_cut,total_assoc,ratio_sum,seconds\n";
    std::ostringstream line;
    line << std::setprecision(12);
    for (const auto& row : table.rows) {
        line.str("");
        line << row.label << ',' << row.ell << ',' << to_string(row.status) << ',';
        if (row.feasible)
            line << row.objective << ',' << row.total_cut << ',' << row.total_assoc << ','
                 << row.ratio_sum;
        else
            line << "-,-,-,-";
        line << ',' << row.seconds;
        out << line.str() << '\n';
    }
}

// ---------------------------------------------------------------------------
// Batch harness
// ---------------------------------------------------------------------------

namespace {

struct Stats {
    std::optional<double> mean, stddev;
};

Stats sample_stats(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

BatchStats run_batch(const std::vector<BatchClass>& classes, const ClusterParams& p,
                     const SolveLimits& limits, const SolverBackend& backend) {
    BatchStats stats;
    for (const auto& klass : classes) {
        std::vector<double> opt_times, gaps, ratios;
        int connected = 0, nonempty = 0, solved = 0, unsolved = 0;
        for (std::uint64_t seed : klass.seeds) {
            InstanceResult res;
            res.klass = klass.name;
            res.seed = seed;
            res.objective = p.objective;
            try {
                GeneratorConfig cfg = klass.base;
                cfg.seed = seed;
                const Graph g = generate_random(cfg);
                const Solution sol = backend.solve(build_model(g, p), limits);
                res.status = sol.status;
                res.opt_seconds = sol.solve_seconds;
                res.gap = sol.mip_gap;
                if (sol.has_values()) {
                    const ClusterReport report = validate_solution(g, p, sol);
                    res.r = report.ratio_r;
                    res.connected_clusters = report.connectivity.connected_clusters();
                    res.nonempty_clusters = report.connectivity.nonempty_clusters();
                    res.con_percent = 100.0 * report.connectivity.fraction_connected;
                    ratios.push_back(res.r);
                    connected += res.connected_clusters;
                    nonempty += res.nonempty_clusters;
                }
                if (sol.status == SolveStatus::Optimal) {
                    ++solved;
                    opt_times.push_back(sol.solve_seconds);
                } else {
                    ++unsolved;
                    gaps.push_back(sol.mip_gap);
                }
            } catch (const std::exception& ex) {
                res.failed = true;
                res.error = ex.what();
                ++unsolved;
            }
            stats.instances.push_back(std::move(res));
        }
        ClassStats cs;
        cs.klass = klass.name;
        cs.solved = solved;
        cs.unsolved = unsolved;
        const Stats opt = sample_stats(opt_times);
        const Stats gap = sample_stats(gaps);
        const Stats ratio = sample_stats(ratios);
        cs.opt_mean = opt.mean;
        cs.opt_std = opt.stddev;
        cs.gap_mean = gap.mean;
        cs.gap_std = gap.stddev;
        cs.r_mean = ratio.mean;
        cs.r_std = ratio.stddev;
        cs.con_percent = nonempty == 0 ? 100.0 : 100.0 * connected / nonempty;
        stats.classes.push_back(std::move(cs));
    }
    return stats;
}

namespace {

std::string opt_str(const std::optional<double>& v) {
    if (!v) return "-";
    std::ostringstream ss;
    ss << std::setprecision(9) << *v;
    return ss.str();
}

}  // namespace

void write_instances_csv(const BatchStats& stats, std::ostream& out) {
    out << "class,seed,objective,status,opt_seconds,gap,r,con_percent\n";
    for (const auto& r : stats.instances) {
        out << r.klass << ',' << r.seed << ',' << to_string(r.objective) << ','
            << (r.failed ? "error" : to_string(r.status)) << ',';
        std::ostringstream ss;
        ss << std::setprecision(9) << r.opt_seconds << ',' << r.gap << ',' << r.r << ','
           << r.con_percent;
        out << ss.str() << '\n';
    }
}

void write_class_stats_csv(const BatchStats& stats, std::ostream& out) {
    out << "class,solved,unsolved,opt_mean,opt_std,gap_mean,gap_std,r_mean,r_std,con_percent\n";
    for (const auto& c : stats.classes) {
        std::ostringstream ss;
        ss << std::setprecision(9) << c.con_percent;
        out << c.klass << ',' << c.solved << ',' << c.unsolved << ',' << opt_str(c.opt_mean) << ','
            << opt_str(c.opt_std) << ',' << opt_str(c.gap_mean) << ',' << opt_str(c.gap_std) << ','
            << opt_str(c.r_mean) << ',' << opt_str(c.r_std) << ',' << ss.str() << '\n';
    }
}

}  // namespace sgc
