// Brute-force reference computations for the test suite. Everything here is
// deliberately independent of the library's search-based implementations:
// distances come from Floyd-Warshall, power graphs are materialized, and
// components come from pairwise closure.

#ifndef WDC_TESTS_ORACLES_HPP
#define WDC_TESTS_ORACLES_HPP

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "wdc/graph.hpp"

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<std::vector<double>> all_pairs(const wdc::WeightedGraph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (int v = 0; v < n; ++v) d[v][v] = 0.0;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        int u = g.edge_u(e), v = g.edge_v(e);
        d[u][v] = std::min(d[u][v], g.edge_weight(e));
        d[v][u] = d[u][v];
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

// materialized ell-th power: unweighted adjacency matrix
inline std::vector<std::vector<char>> power_adjacency(const std::vector<std::vector<double>>& d,
                                                      double ell) {
    int n = static_cast<int>(d.size());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && d[i][j] <= ell) adj[i][j] = 1;
    return adj;
}

// hop BFS on an explicit adjacency matrix; -1 unreachable
inline std::vector<int> hops_from(const std::vector<std::vector<char>>& adj, int src) {
    int n = static_cast<int>(adj.size());
    std::vector<int> h(n, -1);
    std::vector<int> frontier{src};
    h[src] = 0;
    int lvl = 0;
    while (!frontier.empty()) {
        ++lvl;
        std::vector<int> next;
        for (int u : frontier)
            for (int v = 0; v < n; ++v)
                if (adj[u][v] && h[v] < 0) {
                    h[v] = lvl;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    return h;
}

// max hop distance over pairs of `subset` in the ell-th power; -1 infinite
inline long weak_diameter_hops(const wdc::WeightedGraph& g, const std::vector<int>& subset,
                               double ell) {
    auto d = all_pairs(g);
    auto adj = power_adjacency(d, ell);
    long best = 0;
    for (int x : subset) {
        auto h = hops_from(adj, x);
        for (int y : subset) {
            if (h[y] < 0) return -1;
            best = std::max(best, static_cast<long>(h[y]));
        }
    }
    return best;
}

// pairwise-closure components of `subset` under steps of length <= r
inline std::vector<std::vector<int>> closure_components(const wdc::WeightedGraph& g,
                                                        std::vector<int> subset, double r) {
    std::sort(subset.begin(), subset.end());
    auto d = all_pairs(g);
    int k = static_cast<int>(subset.size());
    std::vector<int> comp(k, -1);
    int next = 0;
    for (int i = 0; i < k; ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = next;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < k; ++b)
                if (comp[b] < 0 && d[subset[a]][subset[b]] <= r) {
                    comp[b] = next;
                    stack.push_back(b);
                }
        }
        ++next;
    }
    std::vector<std::vector<int>> classes(next);
    for (int i = 0; i < k; ++i) classes[comp[i]].push_back(subset[i]);
    return classes;
}

inline wdc::WeightedGraph path(int n, double w = 1.0) {
    wdc::GraphBuilder b(n);
    for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1, w);
    return std::move(b).build();
}

inline wdc::WeightedGraph cycle(int n) {
    wdc::GraphBuilder b(n);
    for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
    return std::move(b).build();
}

inline wdc::WeightedGraph star(int leaves) {
    wdc::GraphBuilder b(leaves + 1);
    for (int i = 1; i <= leaves; ++i) b.add_edge(0, i);
    return std::move(b).build();
}

inline wdc::WeightedGraph complete(int n) {
    wdc::GraphBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
    return std::move(b).build();
}

// seeded sparse random graph, optionally with random weights in [0.5, 2]
inline wdc::WeightedGraph random_graph(int n, double avg_degree, unsigned seed,
                                       bool weighted = false) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> wdist(0.5, 2.0);
    double prob = n > 1 ? avg_degree / (n - 1) : 0.0;
    wdc::GraphBuilder b(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unif(rng) < prob) b.add_edge(i, j, weighted ? wdist(rng) : 1.0);
    return std::move(b).build();
}

} // namespace oracle

#endif
