#include "sgc/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgc::lp {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kFeasEps = 1e-7;

struct Tableau {
    int m = 0;      // rows
    int total = 0;  // structural + slack/surplus + artificial columns
    int art_begin = 0;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<int> basis;

    void pivot(int r, int c) {
        const double piv = a[r][c];
        for (int j = 0; j < total; ++j) a[r][j] /= piv;
        b[r] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == r || std::abs(a[i][c]) < 1e-14) continue;
            const double f = a[i][c];
            for (int j = 0; j < total; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        basis[r] = c;
    }
};

// Minimize the cost row with Bland's rule. Artificial columns never
// re-enter the basis. The running value satisfies: objective = -obj_cell.
// Returns false when an unbounded direction is found.
bool run_simplex(Tableau& t, std::vector<double>& cost, double& obj_cell) {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < t.art_begin; ++j)
            if (cost[j] < -kPivotEps) {
                enter = j;  // Bland: smallest eligible index
                break;
            }
        if (enter < 0) return true;
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < t.m; ++i) {
            if (t.a[i][enter] <= kPivotEps) continue;
            const double ratio = t.b[i] / t.a[i][enter];
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (leave < 0 || t.basis[i] < t.basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) return false;
        const double f = cost[enter];
        t.pivot(leave, enter);
        for (int j = 0; j < t.total; ++j) cost[j] -= f * t.a[leave][j];
        obj_cell -= f * t.b[leave];
    }
}

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    const int nv = p.num_vars;
    if (static_cast<int>(p.objective.size()) != nv || static_cast<int>(p.lower.size()) != nv ||
        static_cast<int>(p.upper.size()) != nv)
        throw std::invalid_argument("solve_lp: inconsistent problem arrays");
    for (int j = 0; j < nv; ++j)
        if (p.upper[j] < p.lower[j] - 1e-12) return {LpStatus::Infeasible, 0.0, {}};

    // Shift to zero lower bounds; finite upper bounds become rows.
    std::vector<LpRow> rows = p.rows;
    for (int j = 0; j < nv; ++j)
        if (std::isfinite(p.upper[j])) rows.push_back({{{j, 1.0}}, -1, p.upper[j]});

    const int m = static_cast<int>(rows.size());
    if (nv == 0) {
        for (const auto& r : rows) {
            if ((r.sense < 0 && 0.0 > r.rhs + kFeasEps) ||
                (r.sense == 0 && std::abs(r.rhs) > kFeasEps) ||
                (r.sense > 0 && 0.0 < r.rhs - kFeasEps))
                return {LpStatus::Infeasible, 0.0, {}};
        }
        return {LpStatus::Optimal, 0.0, {}};
    }

    // Shift right-hand sides; rows with negative shifted rhs are negated so
    // every basis-building rhs is non-negative.
    std::vector<double> shifted_rhs(m);
    std::vector<int> eff_sense(m);
    int n_slack = 0, n_art = 0;
    for (int i = 0; i < m; ++i) {
        double rhs = rows[i].rhs;
        for (auto [v, c] : rows[i].terms) rhs -= c * p.lower[v];
        int sense = rows[i].sense;
        if (rhs < 0) {
            rhs = -rhs;
            sense = -sense;
        }
        shifted_rhs[i] = rhs;
        eff_sense[i] = sense;
        if (sense != 0) ++n_slack;
        if (sense >= 0) ++n_art;
    }

    Tableau t;
    t.m = m;
    t.art_begin = nv + n_slack;
    t.total = nv + n_slack + n_art;
    t.a.assign(m, std::vector<double>(t.total, 0.0));
    t.b = shifted_rhs;
    t.basis.assign(m, -1);

    std::vector<double> phase1(t.total, 0.0);
    int slack_col = nv, art_col = t.art_begin;
    for (int i = 0; i < m; ++i) {
        double raw = rows[i].rhs;
        for (auto [v, c] : rows[i].terms) raw -= c * p.lower[v];
        const double sign = raw < 0 ? -1.0 : 1.0;
        for (auto [v, c] : rows[i].terms) t.a[i][v] += sign * c;
        const int sense = eff_sense[i];
        if (sense < 0) {
            t.a[i][slack_col] = 1.0;
            t.basis[i] = slack_col;
            ++slack_col;
        } else {
            if (sense > 0) {
                t.a[i][slack_col] = -1.0;  // surplus
                ++slack_col;
            }
            t.a[i][art_col] = 1.0;
            t.basis[i] = art_col;
            phase1[art_col] = 1.0;
            ++art_col;
        }
    }

    // Canonicalize the phase-1 row against the starting basis.
    double w_cell = 0.0;
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < t.art_begin) continue;
        for (int j = 0; j < t.total; ++j) phase1[j] -= t.a[i][j];
        w_cell -= t.b[i];
    }
    if (!run_simplex(t, phase1, w_cell)) return {LpStatus::Infeasible, 0.0, {}};
    if (std::abs(w_cell) > kFeasEps) return {LpStatus::Infeasible, 0.0, {}};

    // Drive remaining artificials out; rows with no eligible pivot are
    // redundant and keep a zero-valued artificial basic.
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < t.art_begin) continue;
        for (int j = 0; j < t.art_begin; ++j)
            if (std::abs(t.a[i][j]) > kPivotEps) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase 2 on the shifted problem; final value is recomputed from the
    // unshifted solution, so the running cell starts at zero.
    std::vector<double> cost(t.total, 0.0);
    const double dir = p.maximize ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) cost[j] = dir * p.objective[j];
    double obj_cell = 0.0;
    for (int i = 0; i < m; ++i) {
        const int bv = t.basis[i];
        if (std::abs(cost[bv]) < 1e-14) continue;
        const double f = cost[bv];
        for (int j = 0; j < t.total; ++j) cost[j] -= f * t.a[i][j];
        obj_cell -= f * t.b[i];
    }
    if (!run_simplex(t, cost, obj_cell)) return {LpStatus::Unbounded, 0.0, {}};

    std::vector<double> values(nv, 0.0);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < nv) values[t.basis[i]] = t.b[i];
    for (int j = 0; j < nv; ++j) values[j] += p.lower[j];
    double objective = 0.0;
    for (int j = 0; j < nv; ++j) objective += p.objective[j] * values[j];
    return {LpStatus::Optimal, objective, std::move(values)};
}

}  // namespace sgc::lp
