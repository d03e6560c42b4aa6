#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "izeta/rng.hpp"

namespace izeta {

// Finite simple undirected graph. Immutable after construction; edges are
// stored as (i, j) with i < j, sorted lexicographically.
class Graph {
public:
    using Edge = std::pair<int, int>;

    Graph(int n, std::vector<Edge> edges) : n_(n) {
        if (n <= 0) throw std::invalid_argument("Graph: vertex count must be positive");
        for (auto& [a, b] : edges) {
            if (a == b) throw std::invalid_argument("Graph: self-loops are not allowed");
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw std::invalid_argument("Graph: endpoint index out of range");
            if (a > b) std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("Graph: duplicate edge");
        edges_ = std::move(edges);
        degree_.assign(n_, 0);
        adjacency_lists_.assign(n_, {});
        for (const auto& [a, b] : edges_) {
            ++degree_[a];
            ++degree_[b];
            adjacency_lists_[a].push_back(b);
            adjacency_lists_[b].push_back(a);
        }
        for (auto& nbrs : adjacency_lists_) std::sort(nbrs.begin(), nbrs.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    int degree(int v) const { return degree_[v]; }
    const std::vector<int>& degrees() const { return degree_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_lists_[v]; }

    int min_degree() const {
        return *std::min_element(degree_.begin(), degree_.end());
    }

    bool is_regular() const {
        return min_degree() == *std::max_element(degree_.begin(), degree_.end());
    }

    bool is_connected() const {
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adjacency_lists_[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n_;
    }

    Eigen::MatrixXd adjacency_matrix() const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
        for (const auto& [i, j] : edges_) {
            a(i, j) = 1.0;
            a(j, i) = 1.0;
        }
        return a;
    }

    // Header "n m" followed by one "i j" pair per line, sorted.
    std::string to_edge_list() const {
        std::ostringstream os;
        os << n_ << ' ' << edges_.size() << '\n';
        for (const auto& [i, j] : edges_) os << i << ' ' << j << '\n';
        return os.str();
    }

    static Graph from_edge_list(std::istream& is) {
        int n = 0;
        std::size_t m = 0;
        if (!(is >> n >> m)) throw std::invalid_argument("edge list: bad header");
        std::vector<Edge> edges(m);
        for (auto& [i, j] : edges)
            if (!(is >> i >> j)) throw std::invalid_argument("edge list: truncated");
        return Graph(n, std::move(edges));
    }

    static Graph from_edge_list(const std::string& text) {
        std::istringstream is(text);
        return from_edge_list(is);
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<int> degree_;
    std::vector<std::vector<int>> adjacency_lists_;
};

struct ErdosRenyiSpec {
    int n = 0;
    double rho = 0.0;  // edge probability is rho / n
    std::uint64_t seed = 0;
};

// G(n, rho/n): every unordered pair is included independently with
// probability rho/n, decided by draw #t of the stream derived from the
// seed, where t is the lexicographic index of the pair. Bit-reproducible
// for a fixed spec.
inline Graph sample_erdos_renyi(const ErdosRenyiSpec& spec) {
    if (spec.n <= 0) throw std::invalid_argument("sample_erdos_renyi: n must be positive");
    if (!(spec.rho > 0.0) || !(spec.rho < spec.n))
        throw std::invalid_argument("sample_erdos_renyi: need 0 < rho < n");
    const double p = spec.rho / spec.n;
    std::vector<Graph::Edge> edges;
    std::uint64_t t = 0;
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j, ++t)
            if (stream_uniform(spec.seed, t) < p) edges.emplace_back(i, j);
    return Graph(spec.n, std::move(edges));
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

inline Graph complete_graph(int n) {
    if (n < 2) throw std::invalid_argument("complete_graph: need n >= 2");
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
    if (n < 2) throw std::invalid_argument("path_graph: need n >= 2");
    std::vector<Graph::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

// 3-regular prism on 2n vertices: outer cycle 0..n-1, inner cycle n..2n-1,
// rung (i, n+i).
inline Graph circular_ladder(int n) {
    if (n < 3) throw std::invalid_argument("circular_ladder: need n >= 3");
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
        edges.emplace_back(n + i, n + (i + 1) % n);
        edges.emplace_back(i, n + i);
    }
    return Graph(2 * n, std::move(edges));
}

inline Graph petersen_graph() {
    std::vector<Graph::Edge> edges = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},      // outer pentagon
        {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},      // inner pentagram
        {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};     // spokes
    return Graph(10, std::move(edges));
}

// Pairing-model d-regular graph; configurations with loops or repeated
// edges are rejected and the pairing redrawn, up to max_attempts.
inline Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts = 20000) {
    if (n <= 0 || d <= 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("random_regular: need d < n and n*d even");
    const int stubs = n * d;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<int> perm(stubs);
        for (int i = 0; i < stubs; ++i) perm[i] = i;
        for (int i = stubs - 1; i > 0; --i) {
            int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        std::vector<Graph::Edge> edges;
        bool ok = true;
        for (int k = 0; k < stubs && ok; k += 2) {
            int a = perm[k] / d, b = perm[k + 1] / d;
            if (a == b) ok = false;
            else edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, std::move(edges));
    }
    throw std::runtime_error("random_regular: no simple pairing found within attempt budget");
}

struct DegreeProfile {
    std::vector<int> degrees;
    int min_degree = 0;
    int edge_count = 0;
    int betti = 0;  // r = m - n + 1
};

inline DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    p.degrees = g.degrees();
    p.min_degree = g.min_degree();
    p.edge_count = g.edge_count();
    p.betti = g.edge_count() - g.vertex_count() + 1;
    return p;
}

// Exhaustive count of rooted closed backtrackless tailless paths of each
// length k = 1..k_max, by depth-first enumeration over directed-edge
// sequences. N_k equals Tr(W^k) of the non-backtracking matrix.
inline std::vector<long long> count_closed_bt_paths(const Graph& g, int k_max) {
    if (k_max > 14 || g.edge_count() > 30)
        throw std::invalid_argument("count_closed_bt_paths: enumeration budget is k_max <= 14, m <= 30");
    if (k_max < 1) throw std::invalid_argument("count_closed_bt_paths: k_max must be >= 1");

    // Directed edges as (tail, head).
    struct DirEdge { int tail, head; };
    std::vector<DirEdge> de;
    for (const auto& [i, j] : g.edges()) {
        de.push_back({i, j});
        de.push_back({j, i});
    }
    const int ne = static_cast<int>(de.size());
    auto reversal = [](int e) { return e ^ 1; };
    std::vector<std::vector<int>> out(g.vertex_count());
    for (int e = 0; e < ne; ++e) out[de[e].tail].push_back(e);

    std::vector<long long> counts(static_cast<std::size_t>(k_max) + 1, 0);
    std::vector<int> walk;
    walk.reserve(k_max);
    // Extend the walk edge by edge; a walk of length k closes into a
    // tailless cycle when its last edge feeds the first without reversal.
    auto dfs = [&](auto&& self, int start) -> void {
        const int last = walk.back();
        const int k = static_cast<int>(walk.size());
        if (de[last].head == de[start].tail && start != reversal(last)) ++counts[k];
        if (k == k_max) return;
        for (int next : out[de[last].head]) {
            if (next == reversal(last)) continue;
            walk.push_back(next);
            self(self, start);
            walk.pop_back();
        }
    };
    for (int e = 0; e < ne; ++e) {
        walk.push_back(e);
        dfs(dfs, e);
        walk.pop_back();
    }
    return std::vector<long long>(counts.begin() + 1, counts.end());
}

inline int graph_girth(const Graph& g, int cap = 64) {
    // BFS from every vertex; good enough at enumeration scale.
    int best = cap + 1;
    const int n = g.vertex_count();
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1), parent(n, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if (w != parent[v]) {
                    best = std::min(best, dist[v] + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

}  // namespace izeta
