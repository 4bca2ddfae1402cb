#include "wdc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // keep least index as the root
        parent[b] = a;
    }
};

// groups subset members by union-find root, classes ordered by least member
std::vector<std::vector<int>> collect_classes(UnionFind& uf, std::span<const int> subset,
                                              const std::vector<int>& local_of) {
    std::vector<int> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of_root(sorted.size(), -1);
    for (int v : sorted) {
        int root = uf.find(local_of[v]);
        if (class_of_root[root] < 0) {
            class_of_root[root] = static_cast<int>(classes.size());
            classes.emplace_back();
        }
        classes[class_of_root[root]].push_back(v);
    }
    return classes;
}

// shared closure routine for r- and (r,s)-components; `accept(u, v)` filters
// the projection condition
template <class Accept>
ComponentPartition components_impl(const WeightedGraph& g, std::span<const int> subset, double r,
                                   Exec exec, Accept&& accept) {
    if (r < 0.0) throw std::invalid_argument("components: radius must be nonnegative");
    ComponentPartition out;
    out.r = r;
    if (subset.empty()) return out;

    std::vector<int> local_of(g.num_vertices(), -1);
    std::vector<int> uniq(subset.begin(), subset.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        if (uniq[i] < 0 || uniq[i] >= g.num_vertices())
            throw std::invalid_argument("components: vertex out of range");
        local_of[uniq[i]] = static_cast<int>(i);
    }

    UnionFind uf(static_cast<int>(uniq.size()));
    // the parallel path only pays off on large subsets
    if (exec == Exec::parallel && uniq.size() < 4096) exec = Exec::serial;
    if (exec == Exec::serial) {
        DijkstraWorkspace ws;
        for (int u : uniq) {
            int src[1] = {u};
            ws.run(g, src, r, [&](int v, double) {
                if (local_of[v] >= 0 && accept(u, v)) uf.unite(local_of[u], local_of[v]);
            });
        }
    } else {
        std::vector<std::pair<int, int>> pairs;
#ifdef _OPENMP
#pragma omp parallel
        {
            DijkstraWorkspace ws;
            std::vector<std::pair<int, int>> mine;
#pragma omp for schedule(dynamic, 16)
            for (long i = 0; i < static_cast<long>(uniq.size()); ++i) {
                int u = uniq[i];
                int src[1] = {u};
                ws.run(g, src, r, [&](int v, double) {
                    if (local_of[v] >= 0 && v != u && accept(u, v))
                        mine.emplace_back(local_of[u], local_of[v]);
                });
            }
#pragma omp critical
            pairs.insert(pairs.end(), mine.begin(), mine.end());
        }
#else
        DijkstraWorkspace ws;
        for (int u : uniq) {
            int src[1] = {u};
            ws.run(g, src, r, [&](int v, double) {
                if (local_of[v] >= 0 && v != u && accept(u, v))
                    pairs.emplace_back(local_of[u], local_of[v]);
            });
        }
#endif
        for (auto [a, b] : pairs) uf.unite(a, b);
    }
    out.classes = collect_classes(uf, uniq, local_of);
    return out;
}

// plain BFS levels for unit-weight graphs; -1 unreachable
std::vector<int> bfs_levels(const WeightedGraph& g, std::span<const int> sources) {
    std::vector<int> level(g.num_vertices(), -1);
    std::vector<int> frontier;
    for (int s : sources)
        if (level[s] != 0) {
            level[s] = 0;
            frontier.push_back(s);
        }
    int d = 0;
    std::vector<int> next;
    while (!frontier.empty()) {
        ++d;
        next.clear();
        for (int u : frontier)
            for (int v : g.adj(u))
                if (level[v] < 0) {
                    level[v] = d;
                    next.push_back(v);
                }
        frontier.swap(next);
    }
    return level;
}

} // namespace

std::vector<DistanceValue> distances(const WeightedGraph& g, std::span<const int> sources) {
    std::vector<DistanceValue> out(g.num_vertices(), DistanceValue::infinite());
    DijkstraWorkspace ws;
    ws.run(g, sources, -1.0, [&](int v, double d) { out[v] = DistanceValue::of(d); });
    return out;
}

std::vector<int> neighborhood(const WeightedGraph& g, std::span<const int> s, double radius) {
    if (radius < 0.0) throw std::invalid_argument("neighborhood: radius must be nonnegative");
    std::vector<int> out;
    DijkstraWorkspace ws;
    ws.run(g, s, radius, [&](int v, double) { out.push_back(v); });
    std::sort(out.begin(), out.end());
    return out;
}

ShortestPathTree shortest_path_tree(const WeightedGraph& g, int root) {
    ShortestPathTree t;
    t.dist.assign(g.num_vertices(), kInf);
    t.parent.assign(g.num_vertices(), -1);
    t.dist[root] = 0.0;
    t.parent[root] = root;
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, std::greater<>>
        q;
    q.push({0.0, root});
    std::vector<bool> done(g.num_vertices(), false);
    while (!q.empty()) {
        auto [d, u] = q.top();
        q.pop();
        if (done[u] || d > t.dist[u]) continue;
        done[u] = true;
        auto nbrs = g.adj(u);
        auto ws = g.adj_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            int v = nbrs[i];
            double nd = d + ws[i];
            if (nd < t.dist[v] || (nd == t.dist[v] && !done[v] && u < t.parent[v])) {
                t.dist[v] = nd;
                t.parent[v] = u;
                q.push({nd, v});
            }
        }
    }
    return t;
}

ComponentPartition r_components(const WeightedGraph& g, std::span<const int> subset, double r,
                                Exec exec) {
    return components_impl(g, subset, r, exec, [](int, int) { return true; });
}

ComponentPartition rs_components(const WeightedGraph& g, std::span<const int> subset, double r,
                                 double s, std::span<const double> f, Exec exec) {
    if (s < 0.0) throw std::invalid_argument("rs_components: s must be nonnegative");
    if (static_cast<int>(f.size()) != g.num_vertices())
        throw std::invalid_argument("rs_components: projection size mismatch");
    auto part = components_impl(g, subset, r, exec,
                                [&](int u, int v) { return std::abs(f[u] - f[v]) <= s; });
    part.s = s;
    part.has_projection = true;
    return part;
}

std::vector<int> power_hop_distances(const WeightedGraph& g, std::span<const int> sources,
                                     double ell, std::span<const int> targets) {
    if (!(ell >= 1.0)) throw std::invalid_argument("power scale must be at least 1");

    long remaining = -1;
    std::vector<char> is_target;
    if (!targets.empty()) {
        is_target.assign(g.num_vertices(), 0);
        remaining = 0;
        for (int t : targets)
            if (!is_target[t]) {
                is_target[t] = 1;
                ++remaining;
            }
    }

    std::vector<int> hop(g.num_vertices(), -1);

    if (g.unit_weights()) {
        // in unit-weight graphs the power hop distance is ceil(d / floor(ell))
        int step = static_cast<int>(std::floor(ell));
        auto level = bfs_levels(g, sources);
        for (int v = 0; v < g.num_vertices(); ++v)
            if (level[v] >= 0) hop[v] = (level[v] + step - 1) / step;
        return hop;
    }

    std::vector<int> frontier, next;
    for (int s : sources)
        if (hop[s] != 0) {
            hop[s] = 0;
            frontier.push_back(s);
            if (remaining >= 0 && is_target[s]) --remaining;
        }
    DijkstraWorkspace ws;
    int round = 0;
    while (!frontier.empty() && remaining != 0) {
        ++round;
        next.clear();
        ws.run(g, frontier, ell, [&](int v, double) {
            if (hop[v] < 0) {
                hop[v] = round;
                next.push_back(v);
                if (remaining >= 0 && is_target[v]) --remaining;
            }
        });
        frontier.swap(next);
    }
    return hop;
}

DistanceValue weak_diameter(const WeightedGraph& g, std::span<const int> subset, double ell,
                            Exec exec) {
    if (subset.size() <= 1) return DistanceValue::of(0.0);
    std::vector<int> verts(subset.begin(), subset.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    long best = 0;
    bool infinite = false;
    auto ecc = [&](int x) -> long {
        int src[1] = {x};
        auto hop = power_hop_distances(g, src, ell, verts);
        long m = 0;
        for (int v : verts) {
            if (hop[v] < 0) return -1;
            m = std::max(m, static_cast<long>(hop[v]));
        }
        return m;
    };

    if (exec == Exec::serial) {
        for (int x : verts) {
            long e = ecc(x);
            if (e < 0) {
                infinite = true;
                break;
            }
            best = std::max(best, e);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(max : best) reduction(|| : infinite)
#endif
        for (long i = 0; i < static_cast<long>(verts.size()); ++i) {
            if (infinite) continue;
            long e = ecc(verts[i]);
            if (e < 0)
                infinite = true;
            else
                best = std::max(best, e);
        }
    }
    if (infinite) return DistanceValue::infinite();
    return DistanceValue::of(static_cast<double>(best));
}

DistanceValue weak_diameter_metric(const WeightedGraph& g, std::span<const int> subset,
                                   Exec exec) {
    if (subset.size() <= 1) return DistanceValue::of(0.0);
    std::vector<int> verts(subset.begin(), subset.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<char> member(g.num_vertices(), 0);
    for (int v : verts) member[v] = 1;

    // unit-weight graphs take a plain truncated-BFS path
    if (g.unit_weights()) {
        struct BfsBuf {
            std::vector<int> dist;
            std::vector<int> frontier, next, touched;
        };
        auto ecc_bfs = [&](BfsBuf& buf, int x, long budget) -> long {
            if (buf.dist.empty()) buf.dist.assign(g.num_vertices(), -1);
            buf.frontier.clear();
            buf.touched.clear();
            buf.dist[x] = 0;
            buf.frontier.push_back(x);
            buf.touched.push_back(x);
            std::size_t found = member[x] ? 1 : 0;
            long far = 0, level = 0;
            while (!buf.frontier.empty() && found < verts.size() &&
                   (budget < 0 || level < budget)) {
                ++level;
                buf.next.clear();
                for (int u : buf.frontier)
                    for (int v : g.adj(u))
                        if (buf.dist[v] < 0) {
                            buf.dist[v] = static_cast<int>(level);
                            buf.next.push_back(v);
                            buf.touched.push_back(v);
                            if (member[v]) {
                                ++found;
                                far = level;
                            }
                        }
                buf.frontier.swap(buf.next);
            }
            for (int v : buf.touched) buf.dist[v] = -1;
            return found == verts.size() ? far : -1;
        };
        BfsBuf buf0;
        long cap = ecc_bfs(buf0, verts.front(), -1);
        if (cap < 0) return DistanceValue::infinite();
        const long budget = 2 * cap;
        long best = 0;
        bool infinite = false;
        if (exec == Exec::serial || verts.size() < 64) {
            for (int x : verts) {
                long e = ecc_bfs(buf0, x, budget);
                if (e < 0) {
                    infinite = true;
                    break;
                }
                best = std::max(best, e);
            }
        } else {
#ifdef _OPENMP
#pragma omp parallel
            {
                BfsBuf buf;
#pragma omp for schedule(dynamic, 8) reduction(max : best) reduction(|| : infinite)
                for (long i = 0; i < static_cast<long>(verts.size()); ++i) {
                    if (infinite) continue;
                    long e = ecc_bfs(buf, verts[i], budget);
                    if (e < 0)
                        infinite = true;
                    else
                        best = std::max(best, e);
                }
            }
#else
            for (int x : verts) {
                long e = ecc_bfs(buf0, x, budget);
                if (e < 0) {
                    infinite = true;
                    break;
                }
                best = std::max(best, e);
            }
#endif
        }
        if (infinite) return DistanceValue::infinite();
        return DistanceValue::of(static_cast<double>(best));
    }

    // eccentricity of the least member by expanding-radius searches; every
    // pairwise distance is at most twice that, which caps all later runs
    double cap = 0.0;
    {
        DijkstraWorkspace ws;
        double radius = std::max(1.0, g.max_weight());
        int src[1] = {verts.front()};
        std::size_t prev_settled = 0;
        while (true) {
            std::size_t found = 0, settled = 0;
            double far = 0.0;
            ws.run(g, src, radius, [&](int v, double d) {
                ++settled;
                if (member[v]) {
                    ++found;
                    far = std::max(far, d);
                }
            });
            if (found == verts.size()) {
                cap = far;
                break;
            }
            if (settled == prev_settled) return DistanceValue::infinite();
            prev_settled = settled;
            radius *= 2.0;
        }
    }
    const double budget = 2.0 * cap;

    double best = 0.0;
    bool infinite = false;
    auto ecc = [&](DijkstraWorkspace& ws, int x) -> double {
        std::size_t found = 0;
        double far = 0.0;
        int src[1] = {x};
        ws.run(g, src, budget, [&](int v, double d) {
            if (member[v]) {
                ++found;
                far = std::max(far, d);
            }
        });
        if (found < verts.size()) return -1.0;
        return far;
    };

    if (exec == Exec::serial || verts.size() < 64) {
        DijkstraWorkspace ws;
        for (int x : verts) {
            double e = ecc(ws, x);
            if (e < 0.0) {
                infinite = true;
                break;
            }
            best = std::max(best, e);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel
        {
            DijkstraWorkspace ws;
#pragma omp for schedule(dynamic, 4) reduction(max : best) reduction(|| : infinite)
            for (long i = 0; i < static_cast<long>(verts.size()); ++i) {
                if (infinite) continue;
                double e = ecc(ws, verts[i]);
                if (e < 0.0)
                    infinite = true;
                else
                    best = std::max(best, e);
            }
        }
#else
        DijkstraWorkspace ws;
        for (int x : verts) {
            double e = ecc(ws, x);
            if (e < 0.0) {
                infinite = true;
                break;
            }
            best = std::max(best, e);
        }
#endif
    }
    if (infinite) return DistanceValue::infinite();
    return DistanceValue::of(best);
}

DistanceValue set_distance(const WeightedGraph& g, std::span<const int> a,
                           std::span<const int> b) {
    if (a.empty() || b.empty()) return DistanceValue::infinite();
    std::vector<char> in_b(g.num_vertices(), 0);
    for (int v : b) in_b[v] = 1;
    for (int v : a)
        if (in_b[v]) return DistanceValue::of(0.0);
    DistanceValue out = DistanceValue::infinite();
    DijkstraWorkspace ws;
    // Dijkstra settles vertices in distance order, so the first b-member seen
    // carries the exact set distance; we keep scanning but never improve
    ws.run(g, a, -1.0, [&](int v, double d) {
        if (in_b[v] && !out.finite) out = DistanceValue::of(d);
    });
    return out;
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
    UnionFind uf(g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e) uf.unite(g.edge_u(e), g.edge_v(e));
    std::vector<int> all(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) all[i] = i;
    std::vector<int> ident(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) ident[i] = i;
    return collect_classes(uf, all, ident);
}

} // namespace wdc
