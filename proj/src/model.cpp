#include "sgc/model.hpp"

#include <stdexcept>

namespace sgc {

std::string to_string(Objective o) {
    return o == Objective::MinCut ? "mincut" : "maxassoc";
}

Objective objective_from_string(std::string_view s) {
    if (s == "mincut") return Objective::MinCut;
    if (s == "maxassoc") return Objective::MaxAssociation;
    throw std::invalid_argument("unknown objective: " + std::string(s));
}

void ClusterParams::validate(int n) const {
    if (k < 2) throw std::invalid_argument("params: K must be >= 2");
    if (k > n) throw std::invalid_argument("params: K must be <= |V|");
    auto open_unit = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument(std::string("params: ") + name + " must be in (0, 1)");
    };
    open_unit(mu, "mu");
    open_unit(delta, "delta");
    open_unit(nu, "nu");
    open_unit(sigma, "sigma");
    if (assoc_lower_bound && *assoc_lower_bound < 0.0)
        throw std::invalid_argument("params: assoc_lower_bound must be >= 0");
}

namespace var_name {

// The edge index e is the edge's position in the sorted edge list.
std::string y(int i, int c) { return "y_" + std::to_string(i) + "_" + std::to_string(c); }
std::string x(int i, int c) { return "x_" + std::to_string(i) + "_" + std::to_string(c); }
std::string L(int i) { return "L_" + std::to_string(i); }
std::string t(int i, int c1, int c2) {
    return "t_" + std::to_string(i) + "_" + std::to_string(c1) + "_" + std::to_string(c2);
}
std::string eta(int e, int c1, int c2) {
    return "eta_" + std::to_string(e) + "_" + std::to_string(c1) + "_" + std::to_string(c2);
}
std::string s(int e, int c1, int c2) {
    return "s_" + std::to_string(e) + "_" + std::to_string(c1) + "_" + std::to_string(c2);
}
std::string taui(int e, int c1, int c2) {
    return "taui_" + std::to_string(e) + "_" + std::to_string(c1) + "_" + std::to_string(c2);
}
std::string tauj(int e, int c1, int c2) {
    return "tauj_" + std::to_string(e) + "_" + std::to_string(c1) + "_" + std::to_string(c2);
}
std::string z(int c, int e) { return "z_" + std::to_string(c) + "_" + std::to_string(e); }
std::string pii(int c, int e) { return "pii_" + std::to_string(c) + "_" + std::to_string(e); }
std::string pij(int c, int e) { return "pij_" + std::to_string(c) + "_" + std::to_string(e); }
std::string gam(int c, int e) { return "gam_" + std::to_string(c) + "_" + std::to_string(e); }
std::string tt(int i) { return "tt_" + std::to_string(i); }

}  // namespace var_name

int ModelIR::add_variable(std::string name, VarKind kind, double lo, double hi) {
    const int idx = static_cast<int>(variables.size());
    auto [it, inserted] = var_index.emplace(name, idx);
    if (!inserted) throw std::logic_error("model: duplicate variable name " + name);
    variables.push_back({std::move(name), kind, lo, hi});
    return idx;
}

void ModelIR::add_constraint(RowConstraint row) {
    for (const auto& term : row.terms)
        if (term.var < 0 || term.var >= static_cast<int>(variables.size()))
            throw std::logic_error("model: constraint " + row.name + " references unknown variable");
    constraints.push_back(std::move(row));
}

int ModelIR::index_of(std::string_view name) const {
    auto it = var_index.find(std::string(name));
    if (it == var_index.end()) throw std::out_of_range("model: no variable " + std::string(name));
    return it->second;
}

int ModelIR::find_variable(std::string_view name) const {
    auto it = var_index.find(std::string(name));
    return it == var_index.end() ? -1 : it->second;
}

int ModelIR::count_rows_with_prefix(std::string_view pre) const {
    int count = 0;
    for (const auto& row : constraints)
        if (row.name.compare(0, pre.size(), pre) == 0) ++count;
    return count;
}

namespace {

std::string pair_tag(int a, int b) { return std::to_string(a) + "_" + std::to_string(b); }

}  // namespace

ModelIR build_model(const Graph& g, const ClusterParams& p) {
    const int n = g.num_vertices();
    const int m = g.num_edges();
    const int K = p.k;
    p.validate(n);
    if (m == 0) throw std::invalid_argument("model: graph has no edges");

    ModelIR ir;
    ir.n = n;
    ir.k = K;
    ir.num_edges = m;

    // --- variables ---
    std::vector<std::vector<int>> vy(n, std::vector<int>(K)), vx(n, std::vector<int>(K));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c) vy[i][c] = ir.add_variable(var_name::y(i, c), VarKind::Binary, 0, 1);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c)
            vx[i][c] = ir.add_variable(var_name::x(i, c), VarKind::Continuous, 0, 1);
    std::vector<int> vL(n);
    for (int i = 0; i < n; ++i) vL[i] = ir.add_variable(var_name::L(i), VarKind::Binary, 0, 1);

    // Overlap indicators are symmetric in the cluster pair; one variable per
    // unordered pair serves both orderings of rows (10)-(11).
    auto tvar = [&](int i, int c1, int c2) {
        if (c1 > c2) std::swap(c1, c2);
        return ir.index_of(var_name::t(i, c1, c2));
    };
    for (int i = 0; i < n; ++i)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2)
                ir.add_variable(var_name::t(i, c1, c2), VarKind::Binary, 0, 1);

    auto etavar = [&](int e, int c1, int c2) {
        if (c1 > c2) std::swap(c1, c2);
        return ir.index_of(var_name::eta(e, c1, c2));
    };
    for (int e = 0; e < m; ++e)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2)
                ir.add_variable(var_name::eta(e, c1, c2), VarKind::Binary, 0, 1);

    // Cut indicators and their linearization are oriented: s_e_c1_c2 reads
    // "smaller endpoint in c1, larger endpoint in c2".
    for (int e = 0; e < m; ++e)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                ir.add_variable(var_name::s(e, c1, c2), VarKind::Binary, 0, 1);
            }
    for (int e = 0; e < m; ++e)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                ir.add_variable(var_name::taui(e, c1, c2), VarKind::Continuous, 0, 1);
                ir.add_variable(var_name::tauj(e, c1, c2), VarKind::Continuous, 0, 1);
            }
    for (int c = 0; c < K; ++c)
        for (int e = 0; e < m; ++e) ir.add_variable(var_name::z(c, e), VarKind::Binary, 0, 1);
    for (int c = 0; c < K; ++c)
        for (int e = 0; e < m; ++e) {
            ir.add_variable(var_name::pii(c, e), VarKind::Continuous, 0, 1);
            ir.add_variable(var_name::pij(c, e), VarKind::Continuous, 0, 1);
        }
    for (int c = 0; c < K; ++c)
        for (int e = 0; e < m; ++e) ir.add_variable(var_name::gam(c, e), VarKind::Binary, 0, 1);
    std::vector<int> vtt;
    if (p.enable_time_constraints) {
        vtt.resize(n);
        for (int i = 0; i < n; ++i)
            vtt[i] = ir.add_variable(var_name::tt(i), VarKind::Continuous, 0, n);
    }

    auto svar = [&](int e, int c1, int c2) { return ir.index_of(var_name::s(e, c1, c2)); };
    auto tauivar = [&](int e, int c1, int c2) { return ir.index_of(var_name::taui(e, c1, c2)); };
    auto taujvar = [&](int e, int c1, int c2) { return ir.index_of(var_name::tauj(e, c1, c2)); };
    auto zvar = [&](int c, int e) { return ir.index_of(var_name::z(c, e)); };
    auto piivar = [&](int c, int e) { return ir.index_of(var_name::pii(c, e)); };
    auto pijvar = [&](int c, int e) { return ir.index_of(var_name::pij(c, e)); };
    auto gamvar = [&](int c, int e) { return ir.index_of(var_name::gam(c, e)); };

    auto row = [&](std::string name, std::vector<LinTerm> terms, RowSense sense, double rhs) {
        ir.add_constraint({std::move(name), std::move(terms), sense, rhs});
    };

    // (a) membership: x <= y, x >= mu * y
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c) {
            row("memb_ub_" + pair_tag(i, c), {{vx[i][c], 1}, {vy[i][c], -1}}, RowSense::LE, 0);
            row("memb_lb_" + pair_tag(i, c), {{vx[i][c], 1}, {vy[i][c], -p.mu}}, RowSense::GE, 0);
        }

    // (b) vertex-in-some-cluster logic: y <= L, L <= sum y, sum x = L
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c)
            row("inclust_" + pair_tag(i, c), {{vy[i][c], 1}, {vL[i], -1}}, RowSense::LE, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<LinTerm> terms{{vL[i], 1.0}};
        for (int c = 0; c < K; ++c) terms.push_back({vy[i][c], -1});
        row("lsum_" + std::to_string(i), std::move(terms), RowSense::LE, 0);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<LinTerm> terms;
        for (int c = 0; c < K; ++c) terms.push_back({vx[i][c], 1});
        terms.push_back({vL[i], -1});
        row("xsum_" + std::to_string(i), std::move(terms), RowSense::EQ, 0);
    }

    // (c) equal balance, both sides for every ordered cluster pair
    for (int c1 = 0; c1 < K; ++c1)
        for (int c2 = 0; c2 < K; ++c2) {
            if (c1 == c2) continue;
            std::vector<LinTerm> lo, hi;
            for (int i = 0; i < n; ++i) {
                lo.push_back({vx[i][c2], 1});
                lo.push_back({vx[i][c1], -(1.0 - p.delta)});
                hi.push_back({vx[i][c2], 1});
                hi.push_back({vx[i][c1], -(1.0 + p.delta)});
            }
            row("bal_lo_" + pair_tag(c1, c2), std::move(lo), RowSense::GE, 0);
            row("bal_hi_" + pair_tag(c1, c2), std::move(hi), RowSense::LE, 0);
        }

    // (d) overlap indicators (7)-(9) and cardinality caps (10)-(11)
    for (int i = 0; i < n; ++i)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2) {
                const int tv = tvar(i, c1, c2);
                const std::string tag = std::to_string(i) + "_" + pair_tag(c1, c2);
                row("ovl_up_" + tag, {{vy[i][c1], 1}, {vy[i][c2], 1}, {tv, -1}}, RowSense::LE, 1);
                row("ovl_c1_" + tag, {{tv, 1}, {vy[i][c1], -1}}, RowSense::LE, 0);
                row("ovl_c2_" + tag, {{tv, 1}, {vy[i][c2], -1}}, RowSense::LE, 0);
            }
    for (int c1 = 0; c1 < K; ++c1)
        for (int c2 = c1 + 1; c2 < K; ++c2) {
            std::vector<LinTerm> a, b;
            for (int i = 0; i < n; ++i) {
                const int tv = tvar(i, c1, c2);
                a.push_back({tv, 1});
                a.push_back({vy[i][c1], -p.nu});
                b.push_back({tv, 1});
                b.push_back({vy[i][c2], -p.nu});
            }
            row("ovlcard_a_" + pair_tag(c1, c2), std::move(a), RowSense::LE, 0);
            row("ovlcard_b_" + pair_tag(c1, c2), std::move(b), RowSense::LE, 0);
        }

    // (e) pair-intersection indicators (12)-(14), per edge
    for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edges()[e];
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2) {
                const int ev = etavar(e, c1, c2);
                const int ti = tvar(ed.i, c1, c2);
                const int tj = tvar(ed.j, c1, c2);
                const std::string tag = std::to_string(e) + "_" + pair_tag(c1, c2);
                row("eta_up_" + tag, {{ti, 1}, {tj, 1}, {ev, -1}}, RowSense::LE, 1);
                row("eta_i_" + tag, {{ev, 1}, {ti, -1}}, RowSense::LE, 0);
                row("eta_j_" + tag, {{ev, 1}, {tj, -1}}, RowSense::LE, 0);
            }
    }

    // (f) cut indicators (15)-(17), (19); the a_ij cap (18) is trivially 1
    // on instantiated edges and is folded into the census note
    for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edges()[e];
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                const int sv = svar(e, c1, c2);
                const int ev = etavar(e, c1, c2);
                const std::string tag = std::to_string(e) + "_" + pair_tag(c1, c2);
                row("cut_up_" + tag, {{vy[ed.i][c1], 1}, {vy[ed.j][c2], 1}, {ev, -1}, {sv, -1}},
                    RowSense::LE, 1);
                row("cut_i_" + tag, {{sv, 1}, {vy[ed.i][c1], -1}}, RowSense::LE, 0);
                row("cut_j_" + tag, {{sv, 1}, {vy[ed.j][c2], -1}}, RowSense::LE, 0);
                row("cut_eta_" + tag, {{sv, 1}, {ev, 1}}, RowSense::LE, 1);
            }
    }

    // (g) cut bilinear linearization (21)-(26)
    for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edges()[e];
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                const int sv = svar(e, c1, c2);
                const int ti = tauivar(e, c1, c2);
                const int tj = taujvar(e, c1, c2);
                const std::string tag = std::to_string(e) + "_" + pair_tag(c1, c2);
                row("taui_ub_x_" + tag, {{ti, 1}, {vx[ed.i][c1], -1}}, RowSense::LE, 0);
                row("taui_ub_s_" + tag, {{ti, 1}, {sv, -1}}, RowSense::LE, 0);
                row("taui_lb_" + tag, {{ti, 1}, {sv, -1}, {vx[ed.i][c1], -1}}, RowSense::GE, -1);
                row("tauj_ub_x_" + tag, {{tj, 1}, {vx[ed.j][c2], -1}}, RowSense::LE, 0);
                row("tauj_ub_s_" + tag, {{tj, 1}, {sv, -1}}, RowSense::LE, 0);
                row("tauj_lb_" + tag, {{tj, 1}, {sv, -1}, {vx[ed.j][c2], -1}}, RowSense::GE, -1);
            }
    }

    // (h) association indicators (28)-(30) and their linearization
    for (int c = 0; c < K; ++c)
        for (int e = 0; e < m; ++e) {
            const Edge& ed = g.edges()[e];
            const int zv = zvar(c, e);
            const int pi = piivar(c, e);
            const int pj = pijvar(c, e);
            const std::string tag = pair_tag(c, e);
            row("asc_up_" + tag, {{vy[ed.i][c], 1}, {vy[ed.j][c], 1}, {zv, -1}}, RowSense::LE, 1);
            row("asc_i_" + tag, {{zv, 1}, {vy[ed.i][c], -1}}, RowSense::LE, 0);
            row("asc_j_" + tag, {{zv, 1}, {vy[ed.j][c], -1}}, RowSense::LE, 0);
            row("pii_ub_x_" + tag, {{pi, 1}, {vx[ed.i][c], -1}}, RowSense::LE, 0);
            row("pii_ub_z_" + tag, {{pi, 1}, {zv, -1}}, RowSense::LE, 0);
            row("pii_lb_" + tag, {{pi, 1}, {zv, -1}, {vx[ed.i][c], -1}}, RowSense::GE, -1);
            row("pij_ub_x_" + tag, {{pj, 1}, {vx[ed.j][c], -1}}, RowSense::LE, 0);
            row("pij_ub_z_" + tag, {{pj, 1}, {zv, -1}}, RowSense::LE, 0);
            row("pij_lb_" + tag, {{pj, 1}, {zv, -1}, {vx[ed.j][c], -1}}, RowSense::GE, -1);
        }

    // (i) connectivity: span bounds, edge-count lower bound, degree rows
    for (int c = 0; c < K; ++c)
        for (int e = 0; e < m; ++e) {
            const Edge& ed = g.edges()[e];
            const int gv = gamvar(c, e);
            const std::string tag = pair_tag(c, e);
            row("conn_gi_" + tag, {{gv, 1}, {vy[ed.i][c], -1}}, RowSense::LE, 0);
            row("conn_gj_" + tag, {{gv, 1}, {vy[ed.j][c], -1}}, RowSense::LE, 0);
        }
    for (int c = 0; c < K; ++c) {
        std::vector<LinTerm> terms;
        for (int i = 0; i < n; ++i) terms.push_back({vy[i][c], 1});
        for (int e = 0; e < m; ++e) terms.push_back({gamvar(c, e), -1});
        row("conn_span_" + std::to_string(c), std::move(terms), RowSense::LE, 1);
    }
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c) {
            std::vector<LinTerm> terms{{vy[i][c], 1.0}};
            for (int j : g.neighbors(i)) terms.push_back({zvar(c, g.edge_index(i, j)), -1});
            row("conn_deg_" + pair_tag(i, c), std::move(terms), RowSense::LE, 0);
        }

    // (j) arrival-time rows: gamma = 1 forces t_j = t_i + 1
    if (p.enable_time_constraints) {
        const double big = n + 1;
        for (int c = 0; c < K; ++c)
            for (int e = 0; e < m; ++e) {
                const Edge& ed = g.edges()[e];
                const int gv = gamvar(c, e);
                const std::string tag = pair_tag(c, e);
                row("time_lb_" + tag, {{vtt[ed.j], 1}, {vtt[ed.i], -1}, {gv, -big}}, RowSense::GE,
                    1 - big);
                row("time_ub_" + tag,
                    {{vtt[ed.j], 1}, {vtt[ed.i], -1}, {gv, static_cast<double>(n)}}, RowSense::LE,
                    1 + n);
            }
    }

    // (35) minimum total membership
    if (p.min_size_enabled()) {
        std::vector<LinTerm> terms;
        for (int c = 0; c < K; ++c)
            for (int i = 0; i < n; ++i) terms.push_back({vy[i][c], 1});
        row("minsize", std::move(terms), RowSense::GE, p.sigma * n);
    }

    // epsilon-constraint: total association >= l
    if (p.assoc_lower_bound) {
        std::vector<LinTerm> terms;
        for (int c = 0; c < K; ++c)
            for (int e = 0; e < m; ++e) {
                const double w = static_cast<double>(g.edges()[e].w);
                terms.push_back({piivar(c, e), w});
                terms.push_back({pijvar(c, e), w});
            }
        row("assoc_lb", std::move(terms), RowSense::GE, *p.assoc_lower_bound);
    }

    // objective
    if (p.objective == Objective::MinCut) {
        ir.obj_sense = ObjSense::Minimize;
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                for (int e = 0; e < m; ++e) {
                    const double w = static_cast<double>(g.edges()[e].w);
                    ir.objective.push_back({tauivar(e, c1, c2), w});
                    ir.objective.push_back({taujvar(e, c1, c2), w});
                }
            }
    } else {
        ir.obj_sense = ObjSense::Maximize;
        for (int c = 0; c < K; ++c)
            for (int e = 0; e < m; ++e) {
                const double w = static_cast<double>(g.edges()[e].w);
                ir.objective.push_back({piivar(c, e), w});
                ir.objective.push_back({pijvar(c, e), w});
            }
    }
    return ir;
}

RowConstraint nogood_cut(const ModelIR& m, const std::vector<std::pair<int, int>>& active) {
    if (active.empty()) throw std::invalid_argument("nogood_cut: empty incumbent support");
    RowConstraint row;
    row.name = "nogood_" + std::to_string(m.count_rows_with_prefix("nogood_") + 1);
    for (auto [i, c] : active) row.terms.push_back({m.index_of(var_name::y(i, c)), 1.0});
    row.sense = RowSense::LE;
    row.rhs = static_cast<double>(active.size()) - 1.0;
    return row;
}

}  // namespace sgc
