#ifndef WDC_GRAPH_HPP
#define WDC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wdc {

// Immutable weighted graph. Simple (no loops, no parallel edges), all edge
// weights strictly positive. Vertices are dense 0-based indices; the optional
// labels are metadata only and play no role in the metric.
class WeightedGraph {
public:
    WeightedGraph() = default;

    int num_vertices() const { return n_; }
    std::size_t num_edges() const { return edge_u_.size(); }
    bool empty() const { return n_ == 0; }

    // neighbours of u as parallel spans (vertex, weight)
    std::span<const int> adj(int u) const {
        return {adj_vertex_.data() + adj_start_[u],
                adj_vertex_.data() + adj_start_[u + 1]};
    }
    std::span<const double> adj_weights(int u) const {
        return {adj_weight_.data() + adj_start_[u],
                adj_weight_.data() + adj_start_[u + 1]};
    }
    int degree(int u) const { return adj_start_[u + 1] - adj_start_[u]; }

    int edge_u(std::size_t e) const { return edge_u_[e]; }
    int edge_v(std::size_t e) const { return edge_v_[e]; }
    double edge_weight(std::size_t e) const { return edge_w_[e]; }

    double max_weight() const { return max_w_; }
    // true when every edge has weight exactly 1
    bool unit_weights() const { return unit_; }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(int u) const { return labels_[u]; }

private:
    friend class GraphBuilder;
    int n_ = 0;
    std::vector<int> adj_start_{0};
    std::vector<int> adj_vertex_;
    std::vector<double> adj_weight_;
    std::vector<int> edge_u_, edge_v_;
    std::vector<double> edge_w_;
    std::vector<std::string> labels_;
    double max_w_ = 0.0;
    bool unit_ = true;
};

// Accumulates edges, validates them, and freezes into a WeightedGraph.
class GraphBuilder {
public:
    explicit GraphBuilder(int n);

    // throws std::invalid_argument on loops, duplicate edges, bad weights
    void add_edge(int u, int v, double w = 1.0);
    void set_label(int u, std::string label);
    int num_vertices() const { return n_; }

    WeightedGraph build() &&;

private:
    int n_;
    std::vector<int> eu_, ev_;
    std::vector<double> ew_;
    std::vector<std::string> labels_;
};

// Subgraph induced by a vertex subset, plus the map back to parent indices.
struct InducedSubgraph {
    WeightedGraph graph;
    std::vector<int> to_parent;   // local index -> parent index
};

// `vertices` need not be sorted; the local order follows the given order
// after deduplication and sorting (deterministic).
InducedSubgraph induce(const WeightedGraph& g, std::span<const int> vertices);

// k-subdivision: every edge becomes a path with k+1 unit-weight edges.
// k = 0 returns the graph unchanged (original weights kept). Original
// vertices keep their indices; subdivision vertices are appended.
WeightedGraph subdivide(const WeightedGraph& g, int k);

// Splits every edge heavier than `cap` into equal-weight pieces of weight
// at most `cap` (original vertices keep their indices). Edges already within
// the cap are untouched.
WeightedGraph split_heavy_edges(const WeightedGraph& g, double cap);

// DIMACS-like text format: "p <n> <m>" header, then one "e u v [w]" line per
// edge, 1-indexed, weight defaults to 1.
WeightedGraph read_dimacs(std::istream& in);
WeightedGraph read_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const WeightedGraph& g);
void write_dimacs_file(const std::string& path, const WeightedGraph& g);

} // namespace wdc

#endif
