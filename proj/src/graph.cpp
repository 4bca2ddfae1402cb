#include "wdc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wdc {

GraphBuilder::GraphBuilder(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

void GraphBuilder::add_edge(int u, int v, double w) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loop edge rejected");
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("edge weight must be positive and finite");
    if (u > v) std::swap(u, v);
    eu_.push_back(u);
    ev_.push_back(v);
    ew_.push_back(w);
}

void GraphBuilder::set_label(int u, std::string label) {
    if (labels_.empty()) labels_.resize(n_);
    labels_[u] = std::move(label);
}

WeightedGraph GraphBuilder::build() && {
    // sort edges by (u, v) for deterministic layout and duplicate detection
    std::vector<std::size_t> order(eu_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (eu_[a] != eu_[b]) return eu_[a] < eu_[b];
        return ev_[a] < ev_[b];
    });

    WeightedGraph g;
    g.n_ = n_;
    g.labels_ = std::move(labels_);
    g.edge_u_.reserve(order.size());
    g.edge_v_.reserve(order.size());
    g.edge_w_.reserve(order.size());
    for (std::size_t i : order) {
        if (!g.edge_u_.empty() && g.edge_u_.back() == eu_[i] && g.edge_v_.back() == ev_[i])
            throw std::invalid_argument("parallel edge rejected");
        g.edge_u_.push_back(eu_[i]);
        g.edge_v_.push_back(ev_[i]);
        g.edge_w_.push_back(ew_[i]);
        g.max_w_ = std::max(g.max_w_, ew_[i]);
        if (ew_[i] != 1.0) g.unit_ = false;
    }

    std::vector<int> deg(n_, 0);
    for (std::size_t e = 0; e < g.edge_u_.size(); ++e) {
        ++deg[g.edge_u_[e]];
        ++deg[g.edge_v_[e]];
    }
    g.adj_start_.assign(n_ + 1, 0);
    for (int u = 0; u < n_; ++u) g.adj_start_[u + 1] = g.adj_start_[u] + deg[u];
    g.adj_vertex_.resize(g.adj_start_[n_]);
    g.adj_weight_.resize(g.adj_start_[n_]);
    std::vector<int> fill(g.adj_start_.begin(), g.adj_start_.end() - 1);
    for (std::size_t e = 0; e < g.edge_u_.size(); ++e) {
        int u = g.edge_u_[e], v = g.edge_v_[e];
        double w = g.edge_w_[e];
        g.adj_vertex_[fill[u]] = v;
        g.adj_weight_[fill[u]++] = w;
        g.adj_vertex_[fill[v]] = u;
        g.adj_weight_[fill[v]++] = w;
    }
    return g;
}

InducedSubgraph induce(const WeightedGraph& g, std::span<const int> vertices) {
    std::vector<int> vs(vertices.begin(), vertices.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<int> local(g.num_vertices(), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= g.num_vertices())
            throw std::invalid_argument("induce: vertex out of range");
        local[vs[i]] = static_cast<int>(i);
    }
    GraphBuilder b(static_cast<int>(vs.size()));
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        int u = local[g.edge_u(e)], v = local[g.edge_v(e)];
        if (u >= 0 && v >= 0) b.add_edge(u, v, g.edge_weight(e));
    }
    return {std::move(b).build(), std::move(vs)};
}

WeightedGraph subdivide(const WeightedGraph& g, int k) {
    if (k < 0) throw std::invalid_argument("subdivide: k must be nonnegative");
    if (k == 0) return g;
    int n = g.num_vertices();
    GraphBuilder b(n + static_cast<int>(g.num_edges()) * k);
    int next = n;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        int prev = g.edge_u(e);
        for (int i = 0; i < k; ++i) {
            b.add_edge(prev, next, 1.0);
            prev = next++;
        }
        b.add_edge(prev, g.edge_v(e), 1.0);
    }
    return std::move(b).build();
}

WeightedGraph split_heavy_edges(const WeightedGraph& g, double cap) {
    if (!(cap > 0.0)) throw std::invalid_argument("split_heavy_edges: cap must be positive");
    int extra = 0;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        double w = g.edge_weight(e);
        if (w > cap) extra += static_cast<int>(std::ceil(w / cap)) - 1;
    }
    if (extra == 0) return g;
    int n = g.num_vertices();
    GraphBuilder b(n + extra);
    int next = n;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        double w = g.edge_weight(e);
        if (w <= cap) {
            b.add_edge(g.edge_u(e), g.edge_v(e), w);
            continue;
        }
        int pieces = static_cast<int>(std::ceil(w / cap));
        double part = w / pieces;
        int prev = g.edge_u(e);
        for (int i = 0; i + 1 < pieces; ++i) {
            b.add_edge(prev, next, part);
            prev = next++;
        }
        b.add_edge(prev, g.edge_v(e), part);
    }
    return std::move(b).build();
}

WeightedGraph read_dimacs(std::istream& in) {
    std::string line;
    int n = -1;
    long m = -1;
    GraphBuilder b(0);
    long seen = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            if (n >= 0) throw std::runtime_error("line " + std::to_string(lineno) + ": duplicate header");
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad header");
            b = GraphBuilder(n);
        } else if (tag == "e") {
            if (n < 0) throw std::runtime_error("line " + std::to_string(lineno) + ": edge before header");
            long u, v;
            double w = 1.0;
            if (!(ls >> u >> v))
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad edge");
            ls >> w;
            if (u < 1 || u > n || v < 1 || v > n)
                throw std::runtime_error("line " + std::to_string(lineno) + ": endpoint out of range");
            try {
                b.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1), w);
            } catch (const std::invalid_argument& ex) {
                throw std::runtime_error("line " + std::to_string(lineno) + ": " + ex.what());
            }
            ++seen;
        } else {
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
        }
    }
    if (n < 0) throw std::runtime_error("missing 'p' header");
    if (m >= 0 && seen != m)
        throw std::runtime_error("edge count mismatch: header says " + std::to_string(m) +
                                 ", file has " + std::to_string(seen));
    return std::move(b).build();
}

WeightedGraph read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const WeightedGraph& g) {
    out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    char buf[64];
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        out << "e " << g.edge_u(e) + 1 << ' ' << g.edge_v(e) + 1;
        if (g.edge_weight(e) != 1.0) {
            std::snprintf(buf, sizeof buf, " %.17g", g.edge_weight(e));
            out << buf;
        }
        out << '\n';
    }
}

void write_dimacs_file(const std::string& path, const WeightedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    write_dimacs(out, g);
}

} // namespace wdc
