// External MILP solver drive-through: LP file + parameter file in, solution
// file out. Also hosts the exhaustive oracle used to cross-check optima on
// tiny instances.
#ifndef SGC_SOLVER_HPP
#define SGC_SOLVER_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgc/graph.hpp"
#include "sgc/model.hpp"

namespace sgc {

struct SolveLimits {
    double time_limit_seconds = 600.0;
    std::optional<double> mip_gap_target;
    int threads = 1;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unknown };

std::string to_string(SolveStatus s);

struct Solution {
    SolveStatus status = SolveStatus::Unknown;
    double objective = 0.0;
    double mip_gap = 0.0;
    double solve_seconds = 0.0;
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> y;     // n x k, values 0/1
    std::vector<std::vector<double>> x;  // n x k, values in [0,1]
    // Remaining solver variables (nonzero ones); absent means zero.
    std::map<std::string, double> aux;
    bool has_aux = false;

    bool has_values() const {
        return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
    }
    double aux_value(const std::string& name) const {
        auto it = aux.find(name);
        return it == aux.end() ? 0.0 : it->second;
    }
    /// (vertex, cluster) pairs with y = 1.
    std::vector<std::pair<int, int>> active_memberships() const;
    /// Member vertices per cluster, from y.
    std::vector<std::vector<int>> clusters() const;
};

class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    virtual std::string name() const = 0;
    virtual Solution solve(const ModelIR& m, const SolveLimits& limits) const = 0;
};

/// Runs `command_template` with {model}, {params} and {solution} substituted
/// by the paths of the emitted LP file, the parameter file and the expected
/// solution file. The file formats are pinned in docs/model_reference.md.
class SubprocessBackend : public SolverBackend {
public:
    SubprocessBackend(std::string name, std::string command_template);

    /// Keep solver artifacts in `dir` instead of a throwaway temp dir.
    void set_work_dir(std::filesystem::path dir) { work_dir_ = std::move(dir); }

    std::string name() const override { return name_; }
    Solution solve(const ModelIR& m, const SolveLimits& limits) const override;

private:
    std::string name_;
    std::string command_template_;
    std::optional<std::filesystem::path> work_dir_;
};

/// Resolve a backend spec: "highs" selects the bundled scipy/HiGHS wrapper
/// script; any spec containing "{model}" is used verbatim as a generic
/// command template; a path ending in ".py" is wrapped with python3.
/// The SOFTCLUST_BACKEND environment variable overrides "highs".
std::unique_ptr<SolverBackend> make_backend(const std::string& spec);

/// Locate tools/highs_backend.py (next to the executable, in ../tools, or
/// at the build-time source path). Throws if not found.
std::filesystem::path find_bundled_backend_script();

/// Map a solver output file onto the model's variables. Missing variables
/// are zero; unknown names and malformed numerics throw.
Solution parse_solution_file(const std::string& text, const ModelIR& m);

/// Enumerate every binary membership pattern (requires n*K <= 24), check
/// the pattern-level constraints, optimize the continuous memberships by
/// an internal LP per surviving pattern, and return the exact optimum.
Solution brute_force_oracle(const Graph& g, const ClusterParams& p);

/// Populate s.aux with the indicator and linearization values implied by
/// (y, x): L, t, eta, s, z, gamma (= z), tau and pi products. Overwrites
/// existing aux entries and sets has_aux.
void fill_derived_auxiliaries(Solution& s, const Graph& g);

}  // namespace sgc

#endif
