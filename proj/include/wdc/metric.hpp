#ifndef WDC_METRIC_HPP
#define WDC_METRIC_HPP

#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "wdc/graph.hpp"

namespace wdc {

// Execution policy for the data-parallel kernels. Every kernel has a plain
// serial path kept as the reference implementation; the parallel path uses
// OpenMP when available and must produce identical results.
enum class Exec { serial, parallel };

// Distance with an explicit infinity marker. Infinite iff the endpoints lie
// in different connected components.
struct DistanceValue {
    double value = 0.0;
    bool finite = true;

    static DistanceValue infinite() { return {0.0, false}; }
    static DistanceValue of(double v) { return {v, true}; }

    bool operator==(const DistanceValue& o) const {
        return finite == o.finite && (!finite || value == o.value);
    }
    bool less_than(const DistanceValue& o) const {
        if (!finite) return false;
        if (!o.finite) return true;
        return value < o.value;
    }
};

// Reusable scratch space for truncated multi-source Dijkstra runs; a single
// instance must not be shared across threads.
class DijkstraWorkspace {
public:
    // Settles every vertex whose distance from `sources` is at most `radius`
    // (radius < 0 means unbounded) and reports it through `visit(v, d)`.
    // Sources are settled at distance 0. Deterministic.
    template <class Visit>
    void run(const WeightedGraph& g, std::span<const int> sources, double radius, Visit&& visit) {
        prepare(g.num_vertices());
        for (int s : sources) {
            if (dist_[s] != 0.0 || !seen_[s]) {
                dist_[s] = 0.0;
                seen_[s] = true;
                touched_.push_back(s);
                queue_.push({0.0, s});
            }
        }
        while (!queue_.empty()) {
            auto [d, u] = queue_.top();
            queue_.pop();
            if (!seen_[u] || d > dist_[u]) continue;
            if (done_[u]) continue;
            done_[u] = true;
            visit(u, d);
            auto nbrs = g.adj(u);
            auto ws = g.adj_weights(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                int v = nbrs[i];
                double nd = d + ws[i];
                if (radius >= 0.0 && nd > radius) continue;
                if (!seen_[v] || nd < dist_[v]) {
                    if (!seen_[v]) touched_.push_back(v);
                    seen_[v] = true;
                    dist_[v] = nd;
                    queue_.push({nd, v});
                }
            }
        }
        cleanup();
    }

private:
    void prepare(int n) {
        if (static_cast<int>(seen_.size()) < n) {
            seen_.assign(n, false);
            done_.assign(n, false);
            dist_.assign(n, 0.0);
        }
    }
    void cleanup() {
        for (int v : touched_) {
            seen_[v] = false;
            done_[v] = false;
        }
        touched_.clear();
    }
    std::vector<bool> seen_, done_;
    std::vector<double> dist_;
    std::vector<int> touched_;
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>> queue_;
};

// Partition of a vertex subset into maximal r- or (r,s)-connected classes.
// Classes are sorted by least member, members sorted ascending.
struct ComponentPartition {
    std::vector<std::vector<int>> classes;
    double r = 0.0;
    double s = 0.0;
    bool has_projection = false;
};

// min over sources of the exact shortest-path distance; empty source set
// yields an all-infinity map
std::vector<DistanceValue> distances(const WeightedGraph& g, std::span<const int> sources);

// all vertices at distance <= radius from s (sorted)
std::vector<int> neighborhood(const WeightedGraph& g, std::span<const int> s, double radius);

// shortest-path tree from root with deterministic parent tie-breaking
// (smallest parent index wins among equal distances); parent[root] = root,
// parent[v] = -1 for unreachable v
struct ShortestPathTree {
    std::vector<double> dist;   // +inf when unreachable
    std::vector<int> parent;
};
ShortestPathTree shortest_path_tree(const WeightedGraph& g, int root);

// maximal r-connected classes of `subset`, distances measured in the whole
// graph (not the induced subgraph)
ComponentPartition r_components(const WeightedGraph& g, std::span<const int> subset, double r,
                                Exec exec = Exec::parallel);

// (r,s)-components with respect to the real projection f (one value per
// graph vertex): steps need d <= r and |f-difference| <= s
ComponentPartition rs_components(const WeightedGraph& g, std::span<const int> subset, double r,
                                 double s, std::span<const double> f,
                                 Exec exec = Exec::parallel);

// Hop distances in the ell-th power graph from a source set: two vertices are
// power-adjacent when their distance in g is at most ell. Powers are never
// materialized; each hop is a bounded-radius search. -1 marks unreachable
// vertices. When `targets` is nonempty the search may stop once every target
// has been reached.
std::vector<int> power_hop_distances(const WeightedGraph& g, std::span<const int> sources,
                                     double ell, std::span<const int> targets = {});

// max over vertex pairs of `subset` of the hop distance in the ell-th power;
// infinite when the subset spans several components
DistanceValue weak_diameter(const WeightedGraph& g, std::span<const int> subset, double ell,
                            Exec exec = Exec::parallel);

// max over pairs of the plain graph distance (weak diameter at ell = 1 in
// the weighted metric)
DistanceValue weak_diameter_metric(const WeightedGraph& g, std::span<const int> subset,
                                   Exec exec = Exec::parallel);

// smallest distance between two vertex sets; infinite when disconnected
DistanceValue set_distance(const WeightedGraph& g, std::span<const int> a, std::span<const int> b);

// connected components of the graph itself (least-member order)
std::vector<std::vector<int>> connected_components(const WeightedGraph& g);

} // namespace wdc

#endif
