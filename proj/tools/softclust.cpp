// Command-line front end: generate instances, solve, validate, sweep the
// cut/association trade-off, run baselines, and batch experiment classes.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "sgc/analysis.hpp"
#include "sgc/baselines.hpp"
#include "sgc/connectivity.hpp"
#include "sgc/graph.hpp"
#include "sgc/model.hpp"
#include "sgc/serialize.hpp"
#include "sgc/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;

struct InstanceOpts {
    std::string input;
    sgc::GeneratorConfig gen;
    bool n_set = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", input, "edge-list instance file");
        cmd->add_option("--n", gen.n, "generator: vertex count")->check(CLI::PositiveNumber);
        cmd->add_option("--density", gen.density, "generator: edge density in (0,1]");
        cmd->add_option("--max-weight", gen.max_weight, "generator: maximum edge weight");
        cmd->add_option("--seed", gen.seed, "generator: RNG seed");
        cmd->callback([this, cmd] { n_set = cmd->count("--n") > 0; });
    }

    sgc::Graph load() const {
        if (!input.empty() && n_set)
            throw CLI::ValidationError("instance", "use either --input or --n/--density/...");
        if (!input.empty()) return sgc::load_edge_list_file(input);
        if (n_set) return sgc::generate_random(gen);
        throw CLI::ValidationError("instance", "no input source: pass --input or --n");
    }
};

struct ParamOpts {
    sgc::ClusterParams params;
    std::string objective = "mincut";
    std::string min_size = "auto";
    double assoc_lb = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--k", params.k, "number of clusters")->check(CLI::Range(2, 1000));
        cmd->add_option("--mu", params.mu, "minimum membership");
        cmd->add_option("--delta", params.delta, "balance tolerance");
        cmd->add_option("--nu", params.nu, "maximum overlap fraction");
        cmd->add_option("--sigma", params.sigma, "minimum total membership fraction");
        cmd->add_option("--objective", objective, "mincut | maxassoc")
            ->check(CLI::IsMember({"mincut", "maxassoc"}));
        cmd->add_option("--assoc-lb", assoc_lb, "association lower bound (epsilon constraint)");
        cmd->add_option("--min-size", min_size, "min-size row: auto | on | off")
            ->check(CLI::IsMember({"auto", "on", "off"}));
        cmd->add_flag("--time-constraints", params.enable_time_constraints,
                      "add arrival-time rows");
    }

    sgc::ClusterParams resolve() const {
        sgc::ClusterParams p = params;
        p.objective = sgc::objective_from_string(objective);
        if (min_size == "on") p.enable_min_size = true;
        if (min_size == "off") p.enable_min_size = false;
        if (assoc_lb >= 0.0) p.assoc_lower_bound = assoc_lb;
        return p;
    }
};

struct SolveOpts {
    sgc::SolveLimits limits;
    double mip_gap = -1.0;
    std::string backend_spec = "highs";

    void attach(CLI::App* cmd) {
        cmd->add_option("--time-limit", limits.time_limit_seconds, "solver time limit (seconds)");
        cmd->add_option("--threads", limits.threads, "solver threads");
        cmd->add_option("--mip-gap", mip_gap, "relative MIP gap target");
        cmd->add_option("--backend", backend_spec,
                        "highs | command template with {model} {params} {solution}");
    }

    sgc::SolveLimits resolve() const {
        sgc::SolveLimits l = limits;
        if (mip_gap >= 0.0) l.mip_gap_target = mip_gap;
        return l;
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

int status_exit_code(sgc::SolveStatus status) {
    switch (status) {
        case sgc::SolveStatus::Optimal:
        case sgc::SolveStatus::Feasible: return kExitOk;
        case sgc::SolveStatus::Infeasible: return kExitInfeasible;
        case sgc::SolveStatus::Unknown: return kExitError;
    }
    return kExitError;
}

std::vector<sgc::BatchClass> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    json j = json::parse(in);
    std::vector<sgc::BatchClass> classes;
    for (const auto& item : j) {
        sgc::BatchClass c;
        c.name = item.at("name").get<std::string>();
        c.base.n = item.at("n").get<int>();
        c.base.density = item.at("density").get<double>();
        c.base.max_weight = item.at("max_weight").get<std::int64_t>();
        c.seeds = item.at("seeds").get<std::vector<std::uint64_t>>();
        classes.push_back(std::move(c));
    }
    return classes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soft graph clustering via mixed-integer programming"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    app.add_option("--out", out_dir, "output directory for artifacts")->capture_default_str();

    // generate
    auto* cmd_generate = app.add_subcommand("generate", "write a random instance");
    sgc::GeneratorConfig gen_cfg;
    cmd_generate->add_option("--n", gen_cfg.n, "vertex count")->required();
    cmd_generate->add_option("--density", gen_cfg.density, "edge density in (0,1]")->required();
    cmd_generate->add_option("--max-weight", gen_cfg.max_weight, "maximum edge weight")->required();
    cmd_generate->add_option("--seed", gen_cfg.seed, "RNG seed");

    // solve
    auto* cmd_solve = app.add_subcommand("solve", "build and solve the clustering MILP");
    InstanceOpts solve_instance;
    ParamOpts solve_params;
    SolveOpts solve_limits;
    bool lazy_connectivity = false;
    int max_rounds = 10;
    bool unit_transform = false;
    solve_instance.attach(cmd_solve);
    solve_params.attach(cmd_solve);
    solve_limits.attach(cmd_solve);
    cmd_solve->add_flag("--lazy-connectivity", lazy_connectivity,
                        "re-solve with no-good cuts until clusters connect");
    cmd_solve->add_option("--max-rounds", max_rounds, "lazy connectivity round cap");
    cmd_solve->add_flag("--transform-unit-weights", unit_transform,
                        "apply the common-neighbour weight transformation first");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "epsilon-constraint cut/association sweep");
    InstanceOpts sweep_instance;
    ParamOpts sweep_params;
    SolveOpts sweep_limits;
    int sweep_steps = 10;
    bool sweep_transform = false;
    sweep_instance.attach(cmd_sweep);
    sweep_params.attach(cmd_sweep);
    sweep_limits.attach(cmd_sweep);
    cmd_sweep->add_option("--steps", sweep_steps, "number of interior sweep points");
    cmd_sweep->add_flag("--transform-unit-weights", sweep_transform,
                        "apply the common-neighbour weight transformation first");

    // baseline
    auto* cmd_baseline = app.add_subcommand("baseline", "run a comparison method");
    InstanceOpts baseline_instance;
    std::string method;
    int clique_k = 3;
    std::int64_t wstar = 0;
    cmd_baseline->add_option("method", method, "maxmax | cpm")->required();
    baseline_instance.attach(cmd_baseline);
    cmd_baseline->add_option("--k", clique_k, "clique size for cpm");
    cmd_baseline->add_option("--wstar", wstar, "weight threshold for cpm");

    // batch
    auto* cmd_batch = app.add_subcommand("batch", "run a manifest of instance classes");
    std::string manifest_path;
    ParamOpts batch_params;
    SolveOpts batch_limits;
    cmd_batch->add_option("--manifest", manifest_path, "JSON class manifest")->required();
    batch_params.attach(cmd_batch);
    batch_limits.attach(cmd_batch);

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "re-check a stored solution");
    InstanceOpts validate_instance;
    ParamOpts validate_params;
    std::string solution_path;
    validate_instance.attach(cmd_validate);
    validate_params.attach(cmd_validate);
    cmd_validate->add_option("--solution", solution_path, "solution JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        fs::create_directories(out_dir);
        const fs::path out(out_dir);

        if (*cmd_generate) {
            const sgc::Graph g = sgc::generate_random(gen_cfg);
            std::ofstream f(out / "instance.txt", std::ios::binary);
            sgc::save_edge_list(g, f);
            std::cout << "wrote " << (out / "instance.txt").string() << " (" << g.num_vertices()
                      << " vertices, " << g.num_edges() << " edges)\n";
            return kExitOk;
        }

        if (*cmd_solve) {
            sgc::Graph g = solve_instance.load();
            if (unit_transform) g = sgc::transform_unit_weights(g);
            const sgc::ClusterParams p = solve_params.resolve();
            p.validate(g.num_vertices());
            const sgc::SolveLimits limits = solve_limits.resolve();
            auto backend = sgc::make_backend(solve_limits.backend_spec);

            sgc::Solution sol;
            if (lazy_connectivity) {
                const sgc::LazyResult lazy =
                    sgc::solve_with_lazy_connectivity(g, p, limits, *backend, max_rounds);
                sol = lazy.solution;
                std::cout << "lazy rounds used: " << lazy.rounds_used
                          << (lazy.rounds_exhausted ? " (cap reached)" : "") << "\n";
            } else {
                sol = backend->solve(sgc::build_model(g, p), limits);
            }
            write_text(out / "model.lp", sgc::emit_lp(sgc::build_model(g, p)));
            write_json(out / "solution.json", sgc::solution_to_json(sol));
            std::cout << "status: " << sgc::to_string(sol.status) << "\n";
            if (sol.has_values()) {
                const sgc::ClusterReport report = sgc::validate_solution(g, p, sol);
                write_json(out / "report.json", sgc::report_to_json(report));
                std::cout << "objective: " << sol.objective << "\n"
                          << "total_cut: " << report.total_cut
                          << "  total_assoc: " << report.total_assoc << "  r: " << report.ratio_r
                          << "\nconnected clusters: " << report.connectivity.connected_clusters()
                          << "/" << report.connectivity.nonempty_clusters() << "\n";
                if (!report.ok()) {
                    std::cout << "validator violations: " << report.violations.size() << "\n";
                    return kExitError;
                }
            }
            return status_exit_code(sol.status);
        }

        if (*cmd_sweep) {
            sgc::Graph g = sweep_instance.load();
            if (sweep_transform) g = sgc::transform_unit_weights(g);
            const sgc::ClusterParams p = sweep_params.resolve();
            p.validate(g.num_vertices());
            auto backend = sgc::make_backend(sweep_limits.backend_spec);
            const sgc::SweepTable table =
                sgc::epsilon_sweep(g, p, sweep_limits.resolve(), *backend, sweep_steps);
            std::ofstream f(out / "sweep.csv", std::ios::binary);
            sgc::write_sweep_csv(table, f);
            std::cout << "wrote " << (out / "sweep.csv").string() << " (w1=" << table.w1
                      << ", w2=" << table.w2 << ")\n";
            return kExitOk;
        }

        if (*cmd_baseline) {
            const sgc::Graph g = baseline_instance.load();
            sgc::SoftClustering clustering;
            if (method == "maxmax") {
                clustering = sgc::maxmax(g);
            } else if (method == "cpm") {
                clustering = sgc::clique_percolation(g, clique_k, wstar);
            } else {
                std::cerr << "unknown baseline method: " << method << "\n";
                return kExitUsage;
            }
            write_json(out / "clustering.json", sgc::clustering_to_json(clustering));
            std::cout << "clusters: " << clustering.clusters.size() << "\n";
            return kExitOk;
        }

        if (*cmd_batch) {
            const auto classes = load_manifest(manifest_path);
            const sgc::ClusterParams p = batch_params.resolve();
            auto backend = sgc::make_backend(batch_limits.backend_spec);
            const sgc::BatchStats stats =
                sgc::run_batch(classes, p, batch_limits.resolve(), *backend);
            {
                std::ofstream f(out / "instances.csv", std::ios::binary);
                sgc::write_instances_csv(stats, f);
            }
            {
                std::ofstream f(out / "class_stats.csv", std::ios::binary);
                sgc::write_class_stats_csv(stats, f);
            }
            write_json(out / "class_stats.json", sgc::class_stats_to_json(stats));
            std::cout << "wrote instance and class CSVs for " << stats.classes.size()
                      << " classes under " << out.string() << "\n";
            return kExitOk;
        }

        if (*cmd_validate) {
            const sgc::Graph g = validate_instance.load();
            std::ifstream in(solution_path);
            if (!in) throw std::runtime_error("cannot open solution: " + solution_path);
            const sgc::Solution sol = sgc::solution_from_json(json::parse(in));
            sgc::ClusterParams p = validate_params.resolve();
            p.k = sol.k;  // the stored solution fixes the cluster count
            const sgc::ClusterReport report = sgc::validate_solution(g, p, sol);
            write_json(out / "report.json", sgc::report_to_json(report));
            if (report.ok()) {
                std::cout << "solution valid; r = " << report.ratio_r << "\n";
                return kExitOk;
            }
            std::cout << "violations:\n";
            for (const auto& v : report.violations)
                std::cout << "  " << sgc::to_string(v.family) << "  " << v.constraint
                          << "  amount " << v.amount << "\n";
            return kExitInfeasible;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
