// Small dense two-phase simplex for the oracle's continuous restrictions.
// Deliberately independent of the MILP model builder and the external
// solver backends.
#ifndef SGC_SIMPLEX_HPP
#define SGC_SIMPLEX_HPP

#include <vector>

namespace sgc::lp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    int sense = -1;                             // -1: <=, 0: =, +1: >=
    double rhs = 0.0;
};

struct LpProblem {
    int num_vars = 0;
    bool maximize = false;
    std::vector<double> objective;  // size num_vars
    std::vector<double> lower;      // finite lower bounds
    std::vector<double> upper;      // may be +inf
    std::vector<LpRow> rows;
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values;
};

/// Bland's rule, two phases; suitable for the tiny LPs the oracle builds
/// (tens of variables). Bounded variables are handled by shifting to zero
/// lower bounds and adding explicit upper-bound rows.
LpResult solve_lp(const LpProblem& p);

}  // namespace sgc::lp

#endif
