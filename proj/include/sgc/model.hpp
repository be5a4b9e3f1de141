// Solver-agnostic MILP of the soft graph clustering problem: binary
// memberships y, fractional memberships x, balance, overlap caps, cut and
// association indicators with exact product linearizations, polynomial
// connectivity conditions, and optional arrival-time constraints.
#ifndef SGC_MODEL_HPP
#define SGC_MODEL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

enum class Objective { MinCut, MaxAssociation };

std::string to_string(Objective o);
Objective objective_from_string(std::string_view s);

struct ClusterParams {
    int k = 3;
    double mu = 0.05;    // minimum membership when a vertex joins a cluster
    double delta = 0.2;  // balance tolerance band
    double nu = 0.5;     // max overlap fraction between any two clusters
    double sigma = 0.7;  // min total membership fraction (row 35)
    Objective objective = Objective::MinCut;
    std::optional<double> assoc_lower_bound;  // epsilon-constraint bound on total association
    bool enable_time_constraints = false;
    // Min-size row default: on for MinCut (the all-empty solution is
    // otherwise optimal), off for MaxAssociation.
    std::optional<bool> enable_min_size;

    bool min_size_enabled() const {
        return enable_min_size.value_or(objective == Objective::MinCut);
    }
    void validate(int n) const;  // throws std::invalid_argument
};

enum class VarKind { Binary, Continuous };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lo = 0.0;
    double hi = 1.0;
};

enum class RowSense { LE, EQ, GE };

struct LinTerm {
    int var = 0;  // index into ModelIR::variables
    double coef = 0.0;
};

struct RowConstraint {
    std::string name;
    std::vector<LinTerm> terms;
    RowSense sense = RowSense::LE;
    double rhs = 0.0;
};

enum class ObjSense { Minimize, Maximize };

/// Deterministic variable names shared by the builder, the LP writer, the
/// solution parser and the validator.
namespace var_name {
std::string y(int i, int c);
std::string x(int i, int c);
std::string L(int i);
std::string t(int i, int c1, int c2);     // overlap indicator, c1 < c2
std::string eta(int e, int c1, int c2);   // both-endpoints-in-intersection, c1 < c2
std::string s(int e, int c1, int c2);     // cut indicator, ordered (i in c1, j in c2)
std::string taui(int e, int c1, int c2);  // x_{i,c1} * s
std::string tauj(int e, int c1, int c2);  // x_{j,c2} * s
std::string z(int c, int e);              // intra-cluster edge indicator
std::string pii(int c, int e);            // x_{i,c} * z
std::string pij(int c, int e);            // x_{j,c} * z
std::string gam(int c, int e);            // span variable
std::string tt(int i);                    // arrival time
}  // namespace var_name

struct ModelIR {
    int n = 0;
    int k = 0;
    int num_edges = 0;
    ObjSense obj_sense = ObjSense::Minimize;
    std::vector<LinTerm> objective;
    std::vector<Variable> variables;
    std::vector<RowConstraint> constraints;
    std::unordered_map<std::string, int> var_index;

    int add_variable(std::string name, VarKind kind, double lo, double hi);
    void add_constraint(RowConstraint row);  // validates variable references
    int index_of(std::string_view name) const;              // throws std::out_of_range
    int find_variable(std::string_view name) const;         // -1 if absent
    int count_rows_with_prefix(std::string_view pre) const;
};

/// Assemble the full MILP for graph g under params p.
ModelIR build_model(const Graph& g, const ClusterParams& p);

/// No-good cut excluding exactly the given set of active (vertex, cluster)
/// memberships: sum of the listed y-variables <= |active| - 1.
RowConstraint nogood_cut(const ModelIR& m, const std::vector<std::pair<int, int>>& active);

/// Render the model as deterministic, byte-stable LP-format text
/// (objective, Subject To, Bounds, Binaries, End).
std::string emit_lp(const ModelIR& m);

}  // namespace sgc

#endif
