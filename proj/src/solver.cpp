#include "sgc/solver.hpp"

#include <sys/wait.h>

#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sgc/simplex.hpp"

namespace sgc {

namespace fs = std::filesystem;

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unknown: return "unknown";
    }
    return "unknown";
}

std::vector<std::pair<int, int>> Solution::active_memberships() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < k; ++c)
            if (y[i][c]) out.emplace_back(i, c);
    return out;
}

std::vector<std::vector<int>> Solution::clusters() const {
    std::vector<std::vector<int>> out(k);
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < n; ++i)
            if (y[i][c]) out[c].push_back(i);
    return out;
}

namespace {

constexpr double kIntegralityTol = 1e-6;

double parse_number(const std::string& token, const std::string& context) {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::runtime_error("solution file: malformed number '" + token + "' in " + context);
    return v;
}

SolveStatus status_from_keyword(const std::string& s) {
    if (s == "optimal") return SolveStatus::Optimal;
    if (s == "feasible") return SolveStatus::Feasible;
    if (s == "infeasible") return SolveStatus::Infeasible;
    if (s == "unknown") return SolveStatus::Unknown;
    throw std::runtime_error("solution file: unknown status '" + s + "'");
}

// Variable names are classified by their deterministic prefixes; y and x
// land in the dense maps, everything else is retained as auxiliary data.
struct ParsedName {
    enum Kind { Y, X, Other } kind = Other;
    int i = 0, c = 0;
};

ParsedName classify(const std::string& name, int n, int k) {
    ParsedName out;
    const bool is_y = name.size() > 2 && name[0] == 'y' && name[1] == '_';
    const bool is_x = name.size() > 2 && name[0] == 'x' && name[1] == '_';
    if (!is_y && !is_x) return out;
    const auto second = name.find('_', 2);
    if (second == std::string::npos) return out;
    int i = 0, c = 0;
    auto r1 = std::from_chars(name.data() + 2, name.data() + second, i);
    auto r2 = std::from_chars(name.data() + second + 1, name.data() + name.size(), c);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r2.ptr != name.data() + name.size() || i < 0 || i >= n || c < 0 || c >= k)
        return out;
    out.kind = is_y ? ParsedName::Y : ParsedName::X;
    out.i = i;
    out.c = c;
    return out;
}

}  // namespace

Solution parse_solution_file(const std::string& text, const ModelIR& m) {
    Solution sol;
    sol.n = m.n;
    sol.k = m.k;
    sol.y.assign(m.n, std::vector<int>(m.k, 0));
    sol.x.assign(m.n, std::vector<double>(m.k, 0.0));
    sol.has_aux = true;

    std::istringstream in(text);
    std::string line;
    bool saw_status = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string head, value;
        if (!(ls >> head)) continue;
        if (head[0] == '#') continue;
        if (!(ls >> value))
            throw std::runtime_error("solution file line " + std::to_string(lineno) +
                                     ": expected '<key> <value>'");
        if (head == "status") {
            sol.status = status_from_keyword(value);
            saw_status = true;
        } else if (head == "objective") {
            sol.objective = parse_number(value, "objective");
        } else if (head == "gap") {
            sol.mip_gap = parse_number(value, "gap");
        } else if (head == "seconds") {
            sol.solve_seconds = parse_number(value, "seconds");
        } else if (head == "vars") {
            parse_number(value, "vars");  // informational count
        } else {
            const int vi = m.find_variable(head);
            if (vi < 0)
                throw std::runtime_error("solution file line " + std::to_string(lineno) +
                                         ": unknown variable '" + head + "'");
            double v = parse_number(value, head);
            const Variable& var = m.variables[vi];
            if (var.kind == VarKind::Binary) {
                const double r = std::round(v);
                if (std::abs(v - r) > kIntegralityTol)
                    throw std::runtime_error("solution file: binary " + head +
                                             " is not integral: " + value);
                v = r;
            }
            ParsedName pn = classify(head, m.n, m.k);
            if (pn.kind == ParsedName::Y) {
                sol.y[pn.i][pn.c] = static_cast<int>(v);
            } else if (pn.kind == ParsedName::X) {
                if (v < 0.0 && v >= -1e-9) v = 0.0;
                if (v > 1.0 && v <= 1.0 + 1e-9) v = 1.0;
                sol.x[pn.i][pn.c] = v;
            } else if (v != 0.0) {
                sol.aux[head] = v;
            }
        }
    }
    if (!saw_status) throw std::runtime_error("solution file: missing status line");
    return sol;
}

// ---------------------------------------------------------------------------
// Subprocess backend
// ---------------------------------------------------------------------------

namespace {

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

std::string substitute(std::string tpl, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = tpl.find(key, pos)) != std::string::npos) {
        tpl.replace(pos, key.size(), value);
        pos += value.size();
    }
    return tpl;
}

struct ScratchDir {
    fs::path path;
    bool owned = false;

    explicit ScratchDir(const std::optional<fs::path>& fixed) {
        if (fixed) {
            path = *fixed;
            fs::create_directories(path);
            return;
        }
        std::mt19937_64 rng(std::random_device{}());
        for (int attempt = 0; attempt < 32; ++attempt) {
            fs::path candidate = fs::temp_directory_path() /
                                 ("softclust-" + std::to_string(rng() & 0xffffffffULL));
            std::error_code ec;
            if (fs::create_directories(candidate, ec)) {
                path = candidate;
                owned = true;
                return;
            }
        }
        throw std::runtime_error("cannot create scratch directory for solver run");
    }
    ~ScratchDir() {
        if (owned) {
            std::error_code ec;
            fs::remove_all(path, ec);
        }
    }
};

std::string tail_of_file(const fs::path& p, std::size_t max_bytes = 2000) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (all.size() > max_bytes) return "..." + all.substr(all.size() - max_bytes);
    return all;
}

}  // namespace

SubprocessBackend::SubprocessBackend(std::string name, std::string command_template)
    : name_(std::move(name)), command_template_(std::move(command_template)) {
    if (command_template_.find("{model}") == std::string::npos ||
        command_template_.find("{solution}") == std::string::npos)
        throw std::invalid_argument("backend command template needs {model} and {solution}");
}

Solution SubprocessBackend::solve(const ModelIR& m, const SolveLimits& limits) const {
    if (limits.time_limit_seconds <= 0) throw std::invalid_argument("time limit must be > 0");
    ScratchDir dir(work_dir_);
    const fs::path model_path = dir.path / "model.lp";
    const fs::path params_path = dir.path / "solver_params.txt";
    const fs::path solution_path = dir.path / "solution.sol";
    const fs::path log_path = dir.path / "solver_log.txt";

    {
        std::ofstream mf(model_path, std::ios::binary);
        mf << emit_lp(m);
        std::ofstream pf(params_path);
        pf << "time_limit " << limits.time_limit_seconds << "\n";
        pf << "threads " << limits.threads << "\n";
        if (limits.mip_gap_target) pf << "mip_gap " << *limits.mip_gap_target << "\n";
    }
    std::error_code ec;
    fs::remove(solution_path, ec);

    std::string cmd = command_template_;
    cmd = substitute(cmd, "{model}", quoted(model_path));
    cmd = substitute(cmd, "{params}", quoted(params_path));
    cmd = substitute(cmd, "{solution}", quoted(solution_path));
    cmd += " > " + quoted(log_path) + " 2>&1";

    const auto t0 = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (exit_code != 0)
        throw std::runtime_error("solver backend '" + name_ + "' failed (exit " +
                                 std::to_string(exit_code) + "): " + tail_of_file(log_path));
    std::ifstream sf(solution_path, std::ios::binary);
    if (!sf)
        throw std::runtime_error("solver backend '" + name_ + "' produced no solution file: " +
                                 tail_of_file(log_path));
    std::string text((std::istreambuf_iterator<char>(sf)), std::istreambuf_iterator<char>());
    Solution sol = parse_solution_file(text, m);
    if (sol.solve_seconds == 0.0) sol.solve_seconds = wall;
    return sol;
}

std::filesystem::path find_bundled_backend_script() {
    std::vector<fs::path> candidates;
    std::error_code ec;
    fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const fs::path dir = exe.parent_path();
        candidates.push_back(dir / "highs_backend.py");
        candidates.push_back(dir / ".." / "tools" / "highs_backend.py");
        candidates.push_back(dir / ".." / ".." / "tools" / "highs_backend.py");
    }
#ifdef SGC_TOOLS_DIR
    candidates.push_back(fs::path(SGC_TOOLS_DIR) / "highs_backend.py");
#endif
    candidates.push_back(fs::path("tools") / "highs_backend.py");
    for (const auto& c : candidates)
        if (fs::exists(c)) return fs::weakly_canonical(c);
    throw std::runtime_error(
        "cannot locate tools/highs_backend.py; set SOFTCLUST_BACKEND to a backend command");
}

std::unique_ptr<SolverBackend> make_backend(const std::string& spec) {
    std::string s = spec;
    if (s.empty() || s == "highs") {
        if (const char* env = std::getenv("SOFTCLUST_BACKEND"); env && *env) {
            s = env;
        } else {
            const fs::path script = find_bundled_backend_script();
            return std::make_unique<SubprocessBackend>(
                "highs", "python3 " + quoted(script) + " {model} {params} {solution}");
        }
    }
    if (s.find("{model}") != std::string::npos)
        return std::make_unique<SubprocessBackend>("generic", s);
    if (s.size() > 3 && s.compare(s.size() - 3, 3, ".py") == 0)
        return std::make_unique<SubprocessBackend>(
            "generic", "python3 " + quoted(fs::path(s)) + " {model} {params} {solution}");
    return std::make_unique<SubprocessBackend>("generic",
                                               quoted(fs::path(s)) + " {model} {params} {solution}");
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

namespace {

constexpr double kOracleEps = 1e-9;

struct PatternView {
    std::vector<std::uint32_t> cluster_mask;  // per cluster, bit i = vertex membership
    std::vector<int> sizes;
    int total_memberships = 0;

    bool in(int i, int c) const { return (cluster_mask[c] >> i) & 1u; }
};

}  // namespace

Solution brute_force_oracle(const Graph& g, const ClusterParams& p) {
    const int n = g.num_vertices();
    const int K = p.k;
    p.validate(n);
    if (n * K > 24) throw std::invalid_argument("oracle: n*K exceeds the enumeration bound of 24");
    const auto& edges = g.edges();
    const int m = g.num_edges();
    const bool min_size = p.min_size_enabled();
    const double min_members = p.sigma * n;

    std::vector<std::uint32_t> adj_mask(n, 0);
    for (const auto& e : edges) {
        adj_mask[e.i] |= 1u << e.j;
        adj_mask[e.j] |= 1u << e.i;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t limit = 1ull << (n * K);
    bool found = false;
    double best_obj = 0.0;
    std::uint64_t best_bits = 0;
    std::vector<double> best_x;
    std::vector<int> best_vars;  // (i,c) encoded as i*K+c, aligned with best_x

    PatternView pv;
    pv.cluster_mask.resize(K);
    pv.sizes.resize(K);

    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        pv.total_memberships = 0;
        for (int c = 0; c < K; ++c) {
            std::uint32_t mask = 0;
            for (int i = 0; i < n; ++i)
                if ((bits >> (i * K + c)) & 1ull) mask |= 1u << i;
            pv.cluster_mask[c] = mask;
            pv.sizes[c] = std::popcount(mask);
            pv.total_memberships += pv.sizes[c];
        }
        if (min_size && pv.total_memberships < min_members - kOracleEps) continue;

        // membership split must admit sum-to-one with the mu floor
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            int r = 0;
            for (int c = 0; c < K; ++c) r += pv.in(i, c);
            if (r > 0 && p.mu * r > 1.0 + kOracleEps) ok = false;
        }
        if (!ok) continue;

        // overlap caps (both sides of each pair)
        for (int c1 = 0; c1 < K && ok; ++c1)
            for (int c2 = c1 + 1; c2 < K && ok; ++c2) {
                const int o = std::popcount(pv.cluster_mask[c1] & pv.cluster_mask[c2]);
                if (o > p.nu * pv.sizes[c1] + kOracleEps || o > p.nu * pv.sizes[c2] + kOracleEps)
                    ok = false;
            }
        if (!ok) continue;

        // polynomial connectivity conditions: member degree and span count
        for (int c = 0; c < K && ok; ++c) {
            const std::uint32_t mask = pv.cluster_mask[c];
            if (mask == 0) continue;
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1u)
                    if ((adj_mask[i] & mask) == 0) {
                        ok = false;
                        break;
                    }
            if (!ok) break;
            int internal_edges = 0;
            for (const auto& e : edges)
                if (((mask >> e.i) & 1u) && ((mask >> e.j) & 1u)) ++internal_edges;
            if (internal_edges < pv.sizes[c] - 1) ok = false;
        }
        if (!ok) continue;

        // continuous restriction over the active x variables
        std::vector<int> vars;  // encoded (i,c)
        std::vector<int> var_of(n * K, -1);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < K; ++c)
                if (pv.in(i, c)) {
                    var_of[i * K + c] = static_cast<int>(vars.size());
                    vars.push_back(i * K + c);
                }
        lp::LpProblem lpp;
        lpp.num_vars = static_cast<int>(vars.size());
        lpp.maximize = p.objective == Objective::MaxAssociation;
        lpp.objective.assign(lpp.num_vars, 0.0);
        lpp.lower.assign(lpp.num_vars, p.mu);
        lpp.upper.assign(lpp.num_vars, 1.0);

        auto var = [&](int i, int c) { return var_of[i * K + c]; };
        if (p.objective == Objective::MinCut) {
            for (int e = 0; e < m; ++e) {
                const auto& ed = edges[e];
                const double w = static_cast<double>(ed.w);
                for (int c1 = 0; c1 < K; ++c1)
                    for (int c2 = 0; c2 < K; ++c2) {
                        if (c1 == c2) continue;
                        if (!pv.in(ed.i, c1) || !pv.in(ed.j, c2)) continue;
                        const bool ti = pv.in(ed.i, c1) && pv.in(ed.i, c2);
                        const bool tj = pv.in(ed.j, c1) && pv.in(ed.j, c2);
                        if (ti && tj) continue;  // both endpoints in the intersection
                        lpp.objective[var(ed.i, c1)] += w;
                        lpp.objective[var(ed.j, c2)] += w;
                    }
            }
        } else {
            for (int e = 0; e < m; ++e) {
                const auto& ed = edges[e];
                const double w = static_cast<double>(ed.w);
                for (int c = 0; c < K; ++c)
                    if (pv.in(ed.i, c) && pv.in(ed.j, c)) {
                        lpp.objective[var(ed.i, c)] += w;
                        lpp.objective[var(ed.j, c)] += w;
                    }
            }
        }

        for (int i = 0; i < n; ++i) {
            lp::LpRow row;
            for (int c = 0; c < K; ++c)
                if (pv.in(i, c)) row.terms.push_back({var(i, c), 1.0});
            if (row.terms.empty()) continue;
            row.sense = 0;
            row.rhs = 1.0;
            lpp.rows.push_back(std::move(row));
        }
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                lp::LpRow lo, hi;
                for (int i = 0; i < n; ++i) {
                    if (pv.in(i, c2)) {
                        lo.terms.push_back({var(i, c2), 1.0});
                        hi.terms.push_back({var(i, c2), 1.0});
                    }
                    if (pv.in(i, c1)) {
                        lo.terms.push_back({var(i, c1), -(1.0 - p.delta)});
                        hi.terms.push_back({var(i, c1), -(1.0 + p.delta)});
                    }
                }
                lo.sense = 1;
                lo.rhs = 0.0;
                hi.sense = -1;
                hi.rhs = 0.0;
                lpp.rows.push_back(std::move(lo));
                lpp.rows.push_back(std::move(hi));
            }
        if (p.assoc_lower_bound) {
            lp::LpRow row;
            for (int e = 0; e < m; ++e) {
                const auto& ed = edges[e];
                for (int c = 0; c < K; ++c)
                    if (pv.in(ed.i, c) && pv.in(ed.j, c)) {
                        row.terms.push_back({var(ed.i, c), static_cast<double>(ed.w)});
                        row.terms.push_back({var(ed.j, c), static_cast<double>(ed.w)});
                    }
            }
            row.sense = 1;
            row.rhs = *p.assoc_lower_bound;
            lpp.rows.push_back(std::move(row));
        }

        const lp::LpResult res = lp::solve_lp(lpp);
        if (res.status != lp::LpStatus::Optimal) continue;
        const bool better = !found || (p.objective == Objective::MinCut
                                           ? res.objective < best_obj - kOracleEps
                                           : res.objective > best_obj + kOracleEps);
        if (better) {
            found = true;
            best_obj = res.objective;
            best_bits = bits;
            best_x = res.values;
            best_vars = vars;
        }
    }

    Solution sol;
    sol.n = n;
    sol.k = K;
    sol.y.assign(n, std::vector<int>(K, 0));
    sol.x.assign(n, std::vector<double>(K, 0.0));
    sol.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!found) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.objective = best_obj;
    sol.mip_gap = 0.0;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < K; ++c)
            if ((best_bits >> (i * K + c)) & 1ull) sol.y[i][c] = 1;
    for (std::size_t idx = 0; idx < best_vars.size(); ++idx)
        sol.x[best_vars[idx] / K][best_vars[idx] % K] = best_x[idx];

    // Derived auxiliaries so the validator can audit the oracle's solutions
    // the same way it audits backend solutions.
    fill_derived_auxiliaries(sol, g);
    return sol;
}

void fill_derived_auxiliaries(Solution& sol, const Graph& g) {
    const int n = sol.n;
    const int K = sol.k;
    const auto& edges = g.edges();
    const int m = g.num_edges();
    sol.aux.clear();
    sol.has_aux = true;
    auto put = [&](const std::string& name, double v) {
        if (v != 0.0) sol.aux[name] = v;
    };
    auto yv = [&](int i, int c) { return sol.y[i][c]; };
    for (int i = 0; i < n; ++i) {
        int any = 0;
        for (int c = 0; c < K; ++c) any |= yv(i, c);
        put(var_name::L(i), any);
    }
    for (int i = 0; i < n; ++i)
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2)
                put(var_name::t(i, c1, c2), yv(i, c1) && yv(i, c2));
    for (int e = 0; e < m; ++e) {
        const auto& ed = edges[e];
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = c1 + 1; c2 < K; ++c2) {
                const bool ti = yv(ed.i, c1) && yv(ed.i, c2);
                const bool tj = yv(ed.j, c1) && yv(ed.j, c2);
                put(var_name::eta(e, c1, c2), ti && tj);
            }
        for (int c1 = 0; c1 < K; ++c1)
            for (int c2 = 0; c2 < K; ++c2) {
                if (c1 == c2) continue;
                const bool ti = yv(ed.i, c1) && yv(ed.i, c2);
                const bool tj = yv(ed.j, c1) && yv(ed.j, c2);
                const bool sval = yv(ed.i, c1) && yv(ed.j, c2) && !(ti && tj);
                put(var_name::s(e, c1, c2), sval);
                put(var_name::taui(e, c1, c2), sval ? sol.x[ed.i][c1] : 0.0);
                put(var_name::tauj(e, c1, c2), sval ? sol.x[ed.j][c2] : 0.0);
            }
        for (int c = 0; c < K; ++c) {
            const bool zval = yv(ed.i, c) && yv(ed.j, c);
            put(var_name::z(c, e), zval);
            put(var_name::gam(c, e), zval);
            put(var_name::pii(c, e), zval ? sol.x[ed.i][c] : 0.0);
            put(var_name::pij(c, e), zval ? sol.x[ed.j][c] : 0.0);
        }
    }
}

}  // namespace sgc
