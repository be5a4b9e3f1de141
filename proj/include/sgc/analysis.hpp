// Independent solution validation, the cut/association/ratio metrics, the
// epsilon-constraint sweep, and the batch experiment harness.
#ifndef SGC_ANALYSIS_HPP
#define SGC_ANALYSIS_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgc/connectivity.hpp"
#include "sgc/graph.hpp"
#include "sgc/model.hpp"
#include "sgc/solver.hpp"

namespace sgc {

/// Constraint families (a)-(j) of the model plus the min-size row; used to
/// label validator findings.
enum class ConstraintFamily {
    Membership,    // (a) rows 1-2
    ClusterLogic,  // (b) rows 3-5
    Balance,       // (c) row 6
    Overlap,       // (d) rows 7-11
    Intersection,  // (e) rows 12-14
    CutIndicator,  // (f) rows 15-19
    CutLinear,     // (g) rows 21-26
    Association,   // (h) rows 28-31 + pi block
    Connectivity,  // (i) span/degree rows
    Time,          // (j) arrival-time rows
    MinSize,       // row 35
};

std::string to_string(ConstraintFamily f);

struct Violation {
    ConstraintFamily family;
    std::string constraint;  // offending row, named like the model rows
    double amount = 0.0;     // slack by which the row fails
};

struct ClusterReport {
    std::map<std::pair<int, int>, double> kappa;  // ordered cluster pairs
    std::map<int, double> assoc;                  // per cluster
    double total_cut = 0.0;
    double total_assoc = 0.0;
    double ratio_r = 0.0;       // total_cut / total_assoc; 0 when 0/0
    bool ratio_defined = true;  // false when cut > 0 with zero association
    bool membership_ok = true;
    bool balance_ok = true;
    bool overlap_ok = true;
    ConnectivityReport connectivity;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool family_violated(ConstraintFamily f) const;
};

/// Re-check every constraint family directly from (y, x) and the retained
/// auxiliaries, and recompute the metrics from first principles (cut and
/// association indicators re-derived from y, never taken from the solver).
/// Tolerance 1e-6. Violations are data, not errors.
ClusterReport validate_solution(const Graph& g, const ClusterParams& p, const Solution& s);

/// Sum over ordered distinct cluster pairs of kappa / (A(c1) + A(c2)).
/// Zero-over-zero pairs contribute 0; positive cut over zero association
/// yields +infinity.
double ratio_objective_value(const ClusterReport& report);

struct SweepRow {
    std::string label;  // "mincut", "j=1".., "maxassoc"
    double ell = 0.0;   // association lower bound in force (0 at endpoints)
    SolveStatus status = SolveStatus::Unknown;
    bool feasible = false;
    double objective = 0.0;
    double total_cut = 0.0;
    double total_assoc = 0.0;
    double ratio_sum = 0.0;  // post-hoc sum-of-ratios metric
    double seconds = 0.0;
};

struct SweepTable {
    double w1 = 0.0;  // total association of the min-cut endpoint
    double w2 = 0.0;  // optimal total association
    std::vector<SweepRow> rows;  // mincut endpoint, j=1..steps, maxassoc endpoint
};

/// Trace the cut/association trade-off: solve MinCut (w1 = its association),
/// solve MaxAssociation (w2 = its objective), then re-solve MinCut under
/// total association >= (j/steps)(w2 - w1) for j = 1..steps.
SweepTable epsilon_sweep(const Graph& g, const ClusterParams& p, const SolveLimits& limits,
                         const SolverBackend& backend, int steps = 10);

void write_sweep_csv(const SweepTable& table, std::ostream& out);

struct BatchClass {
    std::string name;
    GeneratorConfig base;              // seed field ignored
    std::vector<std::uint64_t> seeds;  // one instance per seed
};

struct InstanceResult {
    std::string klass;
    std::uint64_t seed = 0;
    Objective objective = Objective::MinCut;
    SolveStatus status = SolveStatus::Unknown;
    double opt_seconds = 0.0;
    double gap = 0.0;
    double r = 0.0;
    double con_percent = 0.0;
    int connected_clusters = 0;
    int nonempty_clusters = 0;
    bool failed = false;  // backend error; recorded, not fatal
    std::string error;
};

struct ClassStats {
    std::string klass;
    int solved = 0;    // proven optimal
    int unsolved = 0;  // everything else
    std::optional<double> opt_mean, opt_std;  // over solved instances
    std::optional<double> gap_mean, gap_std;  // over unsolved instances
    std::optional<double> r_mean, r_std;      // over instances with a solution
    double con_percent = 100.0;               // aggregated over clusters
};

struct BatchStats {
    std::vector<InstanceResult> instances;
    std::vector<ClassStats> classes;
};

BatchStats run_batch(const std::vector<BatchClass>& classes, const ClusterParams& p,
                     const SolveLimits& limits, const SolverBackend& backend);

void write_instances_csv(const BatchStats& stats, std::ostream& out);
void write_class_stats_csv(const BatchStats& stats, std::ostream& out);

}  // namespace sgc

#endif
