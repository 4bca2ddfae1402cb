#include "wdc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace wdc {

WeightedGraph gen_grid(const std::vector<int>& dims, bool diagonals) {
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("gen_grid: dimensions must be positive");
        total *= d;
    }
    GraphBuilder b(static_cast<int>(total));
    int nd = static_cast<int>(dims.size());
    std::vector<long> stride(nd, 1);
    for (int i = nd - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];
    std::vector<int> coord(nd, 0);
    // offsets: +1 steps per axis, or all nonzero {-1,0,1} vectors that are
    // lexicographically positive when diagonals are on
    std::vector<std::vector<int>> offsets;
    if (!diagonals) {
        for (int a = 0; a < nd; ++a) {
            std::vector<int> off(nd, 0);
            off[a] = 1;
            offsets.push_back(off);
        }
    } else {
        std::vector<int> off(nd, -1);
        while (true) {
            bool positive = false, nonzero = false;
            for (int c : off) {
                if (c != 0) nonzero = true;
                if (c > 0) {
                    positive = true;
                    break;
                }
                if (c < 0) break;
            }
            if (nonzero && positive) offsets.push_back(off);
            int i = nd - 1;
            while (i >= 0 && off[i] == 1) off[i--] = -1;
            if (i < 0) break;
            ++off[i];
        }
    }
    for (long v = 0; v < total; ++v) {
        long rem = v;
        for (int i = 0; i < nd; ++i) {
            coord[i] = static_cast<int>(rem / stride[i]);
            rem %= stride[i];
        }
        for (const auto& off : offsets) {
            long u = 0;
            bool ok = true;
            for (int i = 0; i < nd && ok; ++i) {
                int c = coord[i] + off[i];
                if (c < 0 || c >= dims[i]) ok = false;
                u += static_cast<long>(c) * stride[i];
            }
            if (ok) b.add_edge(static_cast<int>(v), static_cast<int>(u));
        }
    }
    return std::move(b).build();
}

Embedding grid_embedding(const std::vector<int>& dims, double stretch) {
    long total = 1;
    for (int d : dims) total *= d;
    Embedding emb;
    emb.dim = static_cast<int>(dims.size());
    emb.stretch = stretch;
    emb.points.resize(total);
    std::vector<long> stride(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        stride[i] = stride[i + 1] * dims[i + 1];
    for (long v = 0; v < total; ++v) {
        std::vector<double> pt(dims.size());
        long rem = v;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            pt[i] = static_cast<double>(rem / stride[i]);
            rem %= stride[i];
        }
        emb.points[v] = std::move(pt);
    }
    return emb;
}

std::vector<double> grid_row_layering(int rows, int cols) {
    std::vector<double> L(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) L[static_cast<std::size_t>(r) * cols + c] = r;
    return L;
}

RootedTreeDecomposition grid_column_td(int rows, int cols) {
    RootedTreeDecomposition td;
    if (cols == 1) {
        std::vector<int> bag(rows);
        for (int r = 0; r < rows; ++r) bag[r] = r * cols;
        td.bags.push_back(std::move(bag));
        td.parent = {-1};
        td.root = 0;
        return td;
    }
    for (int c = 0; c + 1 < cols; ++c) {
        std::vector<int> bag;
        for (int r = 0; r < rows; ++r) {
            bag.push_back(r * cols + c);
            bag.push_back(r * cols + c + 1);
        }
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        td.parent.push_back(c == 0 ? -1 : c - 1);
    }
    td.root = 0;
    return td;
}

WeightedGraph gen_cactus(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_cactus: n must be positive");
    std::mt19937_64 rng(seed);
    GraphBuilder b(n);
    int built = 1;
    while (built < n) {
        int anchor = static_cast<int>(rng() % built);
        int remaining = n - built;
        bool cycle = remaining >= 2 && (rng() % 3 != 0);
        if (cycle) {
            int extra = 2 + static_cast<int>(rng() % 4);
            extra = std::min(extra, remaining);
            int prev = anchor;
            for (int i = 0; i < extra; ++i) {
                b.add_edge(prev, built);
                prev = built++;
            }
            b.add_edge(prev, anchor);
        } else {
            b.add_edge(anchor, built++);
        }
    }
    return std::move(b).build();
}

GraphWithTd gen_partial_ktree(int n, int k, std::uint64_t seed, double keep_fraction) {
    if (k < 1 || n < k + 1)
        throw std::invalid_argument("gen_partial_ktree: need n >= k+1, k >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    // k-tree skeleton: cliques tracked per construction step
    std::vector<std::vector<int>> cliques;  // k-cliques available for attachment
    std::vector<int> base(k);
    std::iota(base.begin(), base.end(), 0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
    cliques.push_back(base);

    GraphWithTd out;
    out.td.bags.push_back(base);
    out.td.parent.push_back(-1);
    out.td.root = 0;
    std::vector<int> bag_of_clique{0};

    for (int v = k; v < n; ++v) {
        int ci = static_cast<int>(rng() % cliques.size());
        const std::vector<int> att = cliques[ci];
        for (int u : att) edges.emplace_back(u, v);
        std::vector<int> bag = att;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        out.td.bags.push_back(bag);
        out.td.parent.push_back(bag_of_clique[ci]);
        int new_bag = out.td.num_nodes() - 1;
        // new k-cliques: swap each attachment vertex for v
        for (std::size_t drop = 0; drop < att.size(); ++drop) {
            std::vector<int> c = att;
            c[drop] = v;
            std::sort(c.begin(), c.end());
            cliques.push_back(std::move(c));
            bag_of_clique.push_back(new_bag);
        }
    }

    GraphBuilder b(n);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto [u, v] : edges)
        if (unif(rng) <= keep_fraction) b.add_edge(u, v);
    out.graph = std::move(b).build();
    return out;
}

WeightedGraph gen_planar(int n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_planar: n must be at least 3");
    std::mt19937_64 rng(seed);
    GraphBuilder b(n);
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(0, 2);
    std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 1, 2}};
    for (int v = 3; v < n; ++v) {
        std::size_t fi = rng() % faces.size();
        auto f = faces[fi];
        for (int u : f) b.add_edge(u, v);
        faces[fi] = {f[0], f[1], v};
        faces.push_back({f[0], f[2], v});
        faces.push_back({f[1], f[2], v});
    }
    return std::move(b).build();
}

WeightedGraph gen_planar_grid(int rows, int cols, std::uint64_t seed) {
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("gen_planar_grid: need at least a 2x2 grid");
    std::mt19937_64 rng(seed);
    GraphBuilder b(rows * cols);
    auto idx = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) b.add_edge(idx(r, c), idx(r, c + 1));
            if (r + 1 < rows) b.add_edge(idx(r, c), idx(r + 1, c));
            if (r + 1 < rows && c + 1 < cols) {
                if (rng() % 2)
                    b.add_edge(idx(r, c), idx(r + 1, c + 1));
                else
                    b.add_edge(idx(r, c + 1), idx(r + 1, c));
            }
        }
    return std::move(b).build();
}

WeightedGraph gen_one_planar_stress(const WeightedGraph& g) {
    return subdivide(g, static_cast<int>(g.num_edges()));
}

namespace {

// balanced binary tree with `leaves` leaves; returns (edges, leaf ids, size)
struct TreeShape {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> leaves;
    int size = 0;
};

void build_balanced(TreeShape& t, int node, int leaves) {
    if (leaves == 1) {
        t.leaves.push_back(node);
        return;
    }
    int left = (leaves + 1) / 2;
    int a = t.size++;
    t.edges.emplace_back(node, a);
    build_balanced(t, a, left);
    int bnode = t.size++;
    t.edges.emplace_back(node, bnode);
    build_balanced(t, bnode, leaves - left);
}

} // namespace

WeightedGraph gen_stretch(const WeightedGraph& g, int k, int p) {
    if (k < 1 || p < 1) throw std::invalid_argument("gen_stretch: need k, p >= 1");
    int n = g.num_vertices();
    // per-vertex trees, p-subdivided; the tree root keeps the original
    // vertex id, extra tree vertices are appended after all originals
    std::vector<std::vector<std::pair<int, int>>> tree_edges(n);  // local ids
    std::vector<std::vector<int>> leaf_of(n);  // leaf local id per adjacency slot
    std::vector<int> extra_base(n + 1, 0);     // extras per tree (local ids 1..)
    for (int v = 0; v < n; ++v) {
        int deg = g.degree(v);
        TreeShape t;
        t.size = 1;  // local root = 0
        if (deg >= 1) build_balanced(t, 0, deg);
        int local = t.size;
        std::vector<std::pair<int, int>> edges;
        for (auto [a, c] : t.edges) {
            int prev = a;
            for (int i = 0; i < p; ++i) {
                edges.emplace_back(prev, local);
                prev = local++;
            }
            edges.emplace_back(prev, c);
        }
        tree_edges[v] = std::move(edges);
        leaf_of[v] = t.leaves;  // slot order matches sorted adjacency below
        extra_base[v + 1] = extra_base[v] + (local - 1);
    }
    auto global_id = [&](int v, int local) {
        return local == 0 ? v : n + extra_base[v] + (local - 1);
    };

    // adjacency slots in sorted neighbour order
    std::vector<std::vector<std::pair<int, int>>> slots(n);  // (neighbour, slot)
    for (int v = 0; v < n; ++v) {
        std::vector<int> nb(g.adj(v).begin(), g.adj(v).end());
        std::sort(nb.begin(), nb.end());
        for (std::size_t i = 0; i < nb.size(); ++i) slots[v].emplace_back(nb[i], i);
    }

    int total = n + extra_base[n];
    int path_verts = static_cast<int>(g.num_edges()) * k;
    GraphBuilder b(total + path_verts);
    for (int v = 0; v < n; ++v)
        for (auto [a, c] : tree_edges[v]) b.add_edge(global_id(v, a), global_id(v, c));

    int next = total;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        int u = g.edge_u(e), v = g.edge_v(e);
        auto slot_of = [&](int at, int nb) {
            for (auto [w, s] : slots[at])
                if (w == nb) return s;
            throw std::logic_error("gen_stretch: missing adjacency slot");
        };
        // leaf of T_v indexed u connects to leaf of T_u indexed v
        int lv = global_id(v, leaf_of[v][slot_of(v, u)]);
        int lu = global_id(u, leaf_of[u][slot_of(u, v)]);
        int prev = lv;
        for (int i = 0; i < k; ++i) {
            b.add_edge(prev, next);
            prev = next++;
        }
        b.add_edge(prev, lu);
    }
    return std::move(b).build();
}

GrowthReport growth_check(const WeightedGraph& g, const std::function<double(double)>& profile,
                          const std::vector<double>& radii, int center_samples) {
    GrowthReport rep;
    std::vector<int> centers;
    if (center_samples < 0 || center_samples >= g.num_vertices()) {
        centers.resize(g.num_vertices());
        std::iota(centers.begin(), centers.end(), 0);
    } else {
        // deterministic evenly spaced sample
        for (int i = 0; i < center_samples; ++i)
            centers.push_back(static_cast<int>(
                static_cast<long>(i) * g.num_vertices() / center_samples));
    }
    DijkstraWorkspace ws;
    for (double r : radii) {
        for (int c : centers) {
            long count = 0;
            int src[1] = {c};
            ws.run(g, src, r, [&](int, double) { ++count; });
            if (static_cast<double>(count) > profile(r) + 1e-9) {
                rep.pass = false;
                rep.offending_radius = r;
                rep.offending_center = c;
                rep.observed = count;
                return rep;
            }
        }
    }
    return rep;
}

} // namespace wdc
