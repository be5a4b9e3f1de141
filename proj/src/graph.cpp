#include "sgc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sgc {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& e : edges_) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i == e.j) throw std::invalid_argument("graph: self-loop (" + std::to_string(e.i) + ")");
        if (e.i < 0 || e.j >= n_)
            throw std::invalid_argument("graph: vertex out of range on edge (" + std::to_string(e.i) +
                                        "," + std::to_string(e.j) + ")");
        if (e.w < 0)
            throw std::invalid_argument("graph: negative weight on edge (" + std::to_string(e.i) +
                                        "," + std::to_string(e.j) + ")");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    adj_.assign(n_, {});
    edge_lookup_.reserve(edges_.size());
    for (int idx = 0; idx < static_cast<int>(edges_.size()); ++idx) {
        const Edge& e = edges_[idx];
        if (idx > 0 && edges_[idx - 1].i == e.i && edges_[idx - 1].j == e.j)
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ")");
        adj_[e.i].push_back(e.j);
        adj_[e.j].push_back(e.i);
        edge_lookup_.emplace(static_cast<std::int64_t>(e.i) * n_ + e.j, idx);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::adjacent(int i, int j) const { return edge_index(i, j) >= 0; }

int Graph::edge_index(int i, int j) const {
    if (i == j) return -1;
    if (i > j) std::swap(i, j);
    auto it = edge_lookup_.find(static_cast<std::int64_t>(i) * n_ + j);
    return it == edge_lookup_.end() ? -1 : it->second;
}

const std::vector<int>& Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("graph: vertex " + std::to_string(v));
    return adj_[v];
}

std::int64_t Graph::max_weight() const {
    std::int64_t m = 0;
    for (const auto& e : edges_) m = std::max(m, e.w);
    return m;
}

namespace {

struct ParsedLine {
    int i, j;
    std::int64_t w;
};

ParsedLine parse_edge_line(const std::string& line, int lineno) {
    std::istringstream ss(line);
    long long a, b;
    if (!(ss >> a >> b))
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected \"i j [w]\"");
    long long w = 1;
    if (!ss.eof()) {
        if (!(ss >> w)) {
            std::string trailing;
            ss.clear();
            ss >> trailing;
            if (!trailing.empty())
                throw std::runtime_error("line " + std::to_string(lineno) + ": malformed weight");
            w = 1;
        }
    }
    std::string extra;
    if (ss >> extra)
        throw std::runtime_error("line " + std::to_string(lineno) + ": trailing tokens");
    if (a < 0 || b < 0)
        throw std::runtime_error("line " + std::to_string(lineno) + ": negative vertex id");
    if (a > 100000000 || b > 100000000)
        throw std::runtime_error("line " + std::to_string(lineno) + ": vertex id too large");
    if (a == b) throw std::runtime_error("line " + std::to_string(lineno) + ": self-loop");
    if (w < 0) throw std::runtime_error("line " + std::to_string(lineno) + ": negative weight");
    return {static_cast<int>(a), static_cast<int>(b), w};
}

}  // namespace

Graph load_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::unordered_map<std::int64_t, int> seen;  // pair key -> first line number
    int max_id = -1;
    int lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        ParsedLine p = parse_edge_line(line, lineno);
        int i = std::min(p.i, p.j), j = std::max(p.i, p.j);
        // key uses a fixed stride; vertex ids are only bounded by the file
        std::int64_t key = static_cast<std::int64_t>(i) * (1LL << 31) + j;
        auto [it, inserted] = seen.emplace(key, lineno);
        if (!inserted)
            throw std::runtime_error("line " + std::to_string(lineno) + ": duplicate edge (" +
                                     std::to_string(i) + "," + std::to_string(j) +
                                     "), first seen at line " + std::to_string(it->second));
        edges.push_back({i, j, p.w});
        max_id = std::max(max_id, j);
    }
    return Graph(max_id + 1, std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << e.w << '\n';
}

namespace {

// Uniform draw in [0, bound) by rejection; fixed algorithm so instances
// reproduce across platforms.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r > limit);
    return r % bound;
}

// Lexicographic pair index -> (i, j), i < j.
std::pair<int, int> unrank_pair(std::uint64_t idx, int n) {
    for (int i = 0; i < n - 1; ++i) {
        const std::uint64_t row = static_cast<std::uint64_t>(n - 1 - i);
        if (idx < row) return {i, i + 1 + static_cast<int>(idx)};
        idx -= row;
    }
    throw std::logic_error("unrank_pair: index out of range");
}

}  // namespace

Graph generate_random(const GeneratorConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("generator: need at least 2 vertices");
    if (!(cfg.density > 0.0) || cfg.density > 1.0)
        throw std::invalid_argument("generator: density must be in (0, 1]");
    if (cfg.max_weight < 1) throw std::invalid_argument("generator: max_weight must be >= 1");
    const std::uint64_t max_m = static_cast<std::uint64_t>(cfg.n) * (cfg.n - 1) / 2;
    const std::uint64_t m =
        static_cast<std::uint64_t>(std::llround(cfg.density * static_cast<double>(max_m)));
    if (m < 1) throw std::invalid_argument("generator: density requests no edges");
    if (m > max_m) throw std::invalid_argument("generator: impossible density");

    std::mt19937_64 rng(cfg.seed);
    // Floyd's sampling: uniform m-subset of pair indices without a full shuffle.
    std::vector<std::uint64_t> chosen;
    std::unordered_map<std::uint64_t, bool> in_sample;
    chosen.reserve(m);
    for (std::uint64_t t = max_m - m; t < max_m; ++t) {
        const std::uint64_t r = bounded_draw(rng, t + 1);
        if (in_sample.emplace(r, true).second) {
            chosen.push_back(r);
        } else {
            in_sample.emplace(t, true);
            chosen.push_back(t);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t idx : chosen) {
        auto [i, j] = unrank_pair(idx, cfg.n);
        const std::int64_t w =
            1 + static_cast<std::int64_t>(bounded_draw(rng, static_cast<std::uint64_t>(cfg.max_weight)));
        edges.push_back({i, j, w});
    }
    return Graph(cfg.n, std::move(edges));
}

Graph transform_unit_weights(const Graph& g) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) {
        std::int64_t common = 0;
        for (int k : g.neighbors(e.i))
            if (k != e.j && g.adjacent(e.j, k)) ++common;
        e.w = 1 + common;
    }
    return Graph(g.num_vertices(), std::move(edges));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        const int id = static_cast<int>(out.size());
        std::vector<int> members{start};
        comp[start] = id;
        for (std::size_t q = 0; q < members.size(); ++q)
            for (int nb : g.neighbors(members[q]))
                if (comp[nb] < 0) {
                    comp[nb] = id;
                    members.push_back(nb);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

}  // namespace sgc
