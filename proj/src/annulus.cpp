#include "wdc/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

std::vector<double> dist_from(const WeightedGraph& g, std::span<const int> sources) {
    std::vector<double> d(g.num_vertices(), kInf);
    DijkstraWorkspace ws;
    ws.run(g, sources, -1.0, [&](int v, double dv) { d[v] = dv; });
    return d;
}

// deterministic shortest path from `sources` to `target`: multi-source run
// with smallest-parent tie-breaking, returned source-first
std::vector<int> path_from_set(const WeightedGraph& g, std::span<const int> sources,
                               int target) {
    std::vector<double> dist(g.num_vertices(), kInf);
    std::vector<int> parent(g.num_vertices(), -1);
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>> q;
    for (int s : sources) {
        dist[s] = 0.0;
        parent[s] = s;
        q.push({0.0, s});
    }
    std::vector<char> done(g.num_vertices(), 0);
    while (!q.empty()) {
        auto [d, u] = q.top();
        q.pop();
        if (done[u] || d > dist[u]) continue;
        done[u] = true;
        auto nbrs = g.adj(u);
        auto ws = g.adj_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            int v = nbrs[i];
            double nd = d + ws[i];
            if (nd < dist[v] || (nd == dist[v] && !done[v] && parent[v] >= 0 && u < parent[v])) {
                dist[v] = nd;
                parent[v] = u;
                q.push({nd, v});
            }
        }
    }
    if (dist[target] == kInf)
        throw std::logic_error("path_from_set: target unreachable");
    std::vector<int> path;
    for (int v = target; parent[v] != v; v = parent[v]) path.push_back(v);
    path.push_back([&] {
        int v = target;
        while (parent[v] != v) v = parent[v];
        return v;
    }());
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

AnnulusDecomposition annulus_decompose(const WeightedGraph& g, int root, double r, double q,
                                       double kappa, int p) {
    if (!(r > 0.0) || !(q > 0.0) || !(kappa > 0.0) || p < 1)
        throw std::invalid_argument("annulus_decompose: parameters must be positive");
    if (g.max_weight() > kappa + kEps)
        throw std::invalid_argument("annulus_decompose: edge weight exceeds kappa");
    AnnulusDecomposition dec;
    dec.root = root;
    dec.r = r;
    dec.q = q;
    dec.kappa = kappa;
    dec.p = p;
    int src[1] = {root};
    dec.dist = dist_from(g, src);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (dec.dist[v] < kInf) dec.component.push_back(v);

    double target = r + 3.0 * q + 3.0 * kappa;
    long k0 = static_cast<long>(std::ceil(target / r - kEps));
    if (static_cast<double>(k0) * r < target - kEps) ++k0;
    dec.k0 = k0;
    if (static_cast<double>(k0) * r > 2.0 * r + target - r + kEps)
        throw std::logic_error("annulus_decompose: k0 estimate out of range");
    dec.certificate = (5.0 * r + 9.0 * q + 9.0 * kappa) * p;

    for (int v : dec.component) {
        double d = dec.dist[v];
        if (d < static_cast<double>(k0) * r) {
            dec.c1.push_back(v);
            continue;
        }
        long k = static_cast<long>(std::floor(d / r + kEps));
        if ((k - k0) % 2 == 0)
            dec.c0.push_back(v);
        else
            dec.c1.push_back(v);
    }
    return dec;
}

Cover annulus_cover(const WeightedGraph& g, double r, double q, double kappa, int p,
                    Exec exec) {
    if (g.max_weight() > kappa + kEps)
        throw std::invalid_argument("annulus_cover: edge weight exceeds kappa");
    Cover cover;
    cover.scale = r;
    cover.bound = (5.0 * r + 9.0 * q + 9.0 * kappa) * p;
    cover.producer = "annulus_cover";
    cover.families.resize(2);
    std::vector<int> all_c0, all_c1;
    for (const auto& comp : connected_components(g)) {
        auto dec = annulus_decompose(g, comp.front(), r, q, kappa, p);
        all_c0.insert(all_c0.end(), dec.c0.begin(), dec.c0.end());
        all_c1.insert(all_c1.end(), dec.c1.begin(), dec.c1.end());
    }
    cover.families[0] = r_components(g, all_c0, r, exec).classes;
    cover.families[1] = r_components(g, all_c1, r, exec).classes;
    return cover;
}

FatModelReport verify_fat_model(const WeightedGraph& g, const FatMinorModel& model) {
    FatModelReport rep;
    int np = model.pattern_vertices;
    if (static_cast<int>(model.branch_sets.size()) != np) {
        rep.failure = "branch set count does not match the pattern";
        return rep;
    }
    if (model.connectors.size() != model.pattern_edges.size()) {
        rep.failure = "connector count does not match the pattern edges";
        return rep;
    }

    std::vector<int> owner(g.num_vertices(), -1);
    for (int i = 0; i < np; ++i) {
        if (model.branch_sets[i].empty()) {
            rep.failure = "empty branch set " + std::to_string(i);
            return rep;
        }
        for (int v : model.branch_sets[i]) {
            if (v < 0 || v >= g.num_vertices()) {
                rep.failure = "branch set vertex out of range";
                return rep;
            }
            if (owner[v] >= 0) {
                rep.failure = "branch sets " + std::to_string(owner[v]) + " and " +
                              std::to_string(i) + " overlap";
                rep.offending = {owner[v], i};
                return rep;
            }
            owner[v] = i;
        }
        // connectivity of the induced subgraph
        auto sub = induce(g, model.branch_sets[i]);
        if (connected_components(sub.graph).size() != 1) {
            rep.failure = "branch set " + std::to_string(i) + " is not connected";
            return rep;
        }
    }

    // pairwise branch-set distance at least q
    for (int i = 0; i < np; ++i) {
        auto di = dist_from(g, model.branch_sets[i]);
        for (int j = i + 1; j < np; ++j)
            for (int v : model.branch_sets[j])
                if (di[v] < model.q - kEps) {
                    rep.failure = "branch sets " + std::to_string(i) + " and " +
                                  std::to_string(j) + " are closer than q";
                    rep.offending = {i, j};
                    return rep;
                }
    }

    // connectors: valid paths between their sets, interiors clear of all
    // branch sets; pairwise and non-incident distances at least q
    std::vector<std::vector<int>> interiors(model.connectors.size());
    for (std::size_t e = 0; e < model.connectors.size(); ++e) {
        auto [a, b] = model.pattern_edges[e];
        const auto& path = model.connectors[e];
        if (path.size() < 2) {
            rep.failure = "connector " + std::to_string(e) + " is too short";
            return rep;
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            bool adjacent = false;
            for (int u : g.adj(path[i]))
                if (u == path[i + 1]) adjacent = true;
            if (!adjacent) {
                rep.failure = "connector " + std::to_string(e) + " is not a path";
                return rep;
            }
        }
        if (owner[path.front()] != a || owner[path.back()] != b) {
            rep.failure = "connector " + std::to_string(e) + " misses its branch sets";
            return rep;
        }
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (owner[path[i]] >= 0) {
                rep.failure = "connector " + std::to_string(e) + " interior touches branch set " +
                              std::to_string(owner[path[i]]);
                return rep;
            }
            interiors[e].push_back(path[i]);
        }
    }
    for (std::size_t e = 0; e < model.connectors.size(); ++e) {
        if (interiors[e].empty()) continue;
        auto de = dist_from(g, interiors[e]);
        auto [a, b] = model.pattern_edges[e];
        for (int w = 0; w < np; ++w) {
            if (w == a || w == b) continue;
            for (int v : model.branch_sets[w])
                if (de[v] < model.q - kEps) {
                    rep.failure = "connector " + std::to_string(e) + " too close to branch set " +
                                  std::to_string(w);
                    rep.offending = {static_cast<int>(e), w};
                    return rep;
                }
        }
        for (std::size_t f = e + 1; f < model.connectors.size(); ++f)
            for (int v : interiors[f])
                if (de[v] < model.q - kEps) {
                    rep.failure = "connectors " + std::to_string(e) + " and " +
                                  std::to_string(f) + " are closer than q";
                    rep.offending = {static_cast<int>(e), static_cast<int>(f)};
                    return rep;
                }
    }
    rep.pass = true;
    return rep;
}

std::optional<Violation> find_violation(const WeightedGraph& g, const AnnulusDecomposition& dec,
                                        Exec exec) {
    std::optional<Violation> best;
    for (int side = 0; side < 2; ++side) {
        const auto& set = side == 0 ? dec.c0 : dec.c1;
        auto parts = r_components(g, set, dec.r, exec);
        for (const auto& comp : parts.classes) {
            if (comp.size() < 2) continue;
            DijkstraWorkspace ws;
            std::vector<char> member(g.num_vertices(), 0);
            for (int v : comp) member[v] = 1;
            for (int u : comp) {
                int src[1] = {u};
                ws.run(g, src, -1.0, [&](int v, double d) {
                    if (!member[v] || v <= u) return;
                    if (d > dec.certificate + kEps) {
                        if (!best || d > best->distance + kEps ||
                            (std::abs(d - best->distance) <= kEps &&
                             std::make_pair(u, v) < std::make_pair(best->x, best->y))) {
                            best = Violation{u, v, d, side};
                        }
                    }
                });
            }
        }
    }
    return best;
}

FatMinorModel extract_fat_witness(const WeightedGraph& g, const AnnulusDecomposition& dec,
                                  const Violation& viol) {
    const double r = dec.r, q = dec.q, kappa = dec.kappa;
    const int p = dec.p;

    // confirm the violation and find the r-component holding the pair
    const auto& side_set = viol.side == 0 ? dec.c0 : dec.c1;
    auto parts = r_components(g, side_set, r);
    const std::vector<int>* comp = nullptr;
    for (const auto& cls : parts.classes)
        if (std::binary_search(cls.begin(), cls.end(), viol.x)) {
            comp = &cls;
            break;
        }
    if (!comp || !std::binary_search(comp->begin(), comp->end(), viol.y))
        throw std::invalid_argument("extract_fat_witness: pair not in one r-component");
    {
        int src[1] = {viol.x};
        auto d = dist_from(g, src);
        if (!(d[viol.y] > dec.certificate + kEps))
            throw std::invalid_argument("extract_fat_witness: pair does not violate the bound");
    }
    long k = static_cast<long>(std::floor(dec.dist[viol.x] / r + kEps));
    if (k < dec.k0)
        throw std::logic_error("extract_fat_witness: violating component inside the core ball");

    // r-step chain from x to y inside the component (breadth-first over
    // steps of length at most r, deterministic neighbour order)
    std::vector<int> chain;
    {
        std::vector<int> prev(g.num_vertices(), -1);
        std::vector<char> member(g.num_vertices(), 0), seen(g.num_vertices(), 0);
        for (int v : *comp) member[v] = 1;
        std::vector<int> frontier{viol.x};
        seen[viol.x] = 1;
        DijkstraWorkspace ws;
        bool reached = false;
        while (!frontier.empty() && !reached) {
            std::vector<int> next;
            for (int u : frontier) {
                if (reached) break;
                std::vector<int> reach;
                int src[1] = {u};
                ws.run(g, src, r, [&](int v, double) {
                    if (member[v] && !seen[v]) reach.push_back(v);
                });
                std::sort(reach.begin(), reach.end());
                for (int v : reach) {
                    if (seen[v]) continue;
                    seen[v] = 1;
                    prev[v] = u;
                    next.push_back(v);
                    if (v == viol.y) {
                        reached = true;
                        break;
                    }
                }
            }
            frontier = std::move(next);
        }
        if (!reached) throw std::logic_error("extract_fat_witness: chain construction failed");
        for (int v = viol.y; v != -1; v = prev[v]) chain.push_back(v);
        std::reverse(chain.begin(), chain.end());
    }
    const long ell_len = static_cast<long>(chain.size());

    // skeleton pivots: greedy maximal hops of the proof's step cap
    const double cap = 4.0 * r + 9.0 * q + 9.0 * kappa;
    std::vector<long> iota(p, 0);
    iota[p - 1] = ell_len - 1;
    for (int i = 0; i + 2 < p; ++i) {
        int src[1] = {chain[iota[i]]};
        auto d = dist_from(g, src);
        long best = iota[i];
        for (long j = iota[i]; j <= ell_len - 2; ++j)
            if (d[chain[j]] <= cap + kEps) best = j;
        iota[i + 1] = best + 1;
        if (iota[i + 1] >= ell_len - 1)
            throw std::logic_error("extract_fat_witness: skeleton collapsed, pair too close");
    }

    // hub sets from the shortest paths to the root
    std::vector<std::vector<int>> pivot_paths(p);
    {
        int src[1] = {dec.root};
        for (int i = 0; i < p; ++i) {
            pivot_paths[i] = path_from_set(g, src, chain[iota[i]]);
        }
    }
    const double a_cut = static_cast<double>(k - 1) * r - (3.0 * q + 3.0 * kappa);
    const double d_cut = static_cast<double>(k - 1) * r;

    std::vector<int> hub_a, hub_b;
    std::vector<char> in_b(g.num_vertices(), 0);
    for (const auto& path : pivot_paths)
        for (int v : path) {
            if (dec.dist[v] <= a_cut + kEps) hub_a.push_back(v);
            if (dec.dist[v] >= d_cut - kEps && !in_b[v]) {
                in_b[v] = 1;
                hub_b.push_back(v);
            }
        }
    for (long j = 0; j + 1 < ell_len; ++j) {
        int src[1] = {chain[j]};
        std::vector<double> dloc(g.num_vertices(), kInf);
        DijkstraWorkspace ws;
        ws.run(g, src, r, [&](int v, double d) { dloc[v] = d; });
        if (dloc[chain[j + 1]] == kInf)
            throw std::logic_error("extract_fat_witness: chain step too long");
        auto step = path_from_set(g, src, chain[j + 1]);
        for (int v : step)
            if (!in_b[v]) {
                in_b[v] = 1;
                hub_b.push_back(v);
            }
    }
    std::sort(hub_a.begin(), hub_a.end());
    hub_a.erase(std::unique(hub_a.begin(), hub_a.end()), hub_a.end());
    std::sort(hub_b.begin(), hub_b.end());
    hub_b.erase(std::unique(hub_b.begin(), hub_b.end()), hub_b.end());
    if (hub_a.empty()) throw std::logic_error("extract_fat_witness: inner hub is empty");

    auto dist_a = dist_from(g, hub_a);
    auto dist_b = dist_from(g, hub_b);

    FatMinorModel model;
    model.pattern_vertices = p + 2;
    model.q = q;
    model.branch_sets.resize(p + 2);
    model.branch_sets[0] = hub_a;
    model.branch_sets[1] = hub_b;

    for (int i = 0; i < p; ++i) {
        const auto& path = pivot_paths[i];
        long jstar = -1;
        for (std::size_t j = 0; j < path.size(); ++j)
            if (in_b[path[j]]) {
                jstar = static_cast<long>(j);
                break;
            }
        if (jstar < 0) throw std::logic_error("extract_fat_witness: hub path misses B");
        long ai = -1;
        for (long j = 0; j < jstar; ++j)
            if (dist_a[path[j]] <= q + kappa + kEps) ai = j;
        if (ai < 0) throw std::logic_error("extract_fat_witness: no inner anchor");
        long bi = -1;
        for (long j = ai; j <= jstar; ++j)
            if (dist_b[path[j]] <= q + kappa + kEps) {
                bi = j;
                break;
            }
        if (bi < 0 || bi <= ai)
            throw std::logic_error("extract_fat_witness: no outer anchor");
        // keep the middle strictly between the hubs
        if (in_b[path[bi]]) --bi;
        if (bi <= ai) throw std::logic_error("extract_fat_witness: middle segment collapsed");

        std::vector<int>& mid = model.branch_sets[2 + i];
        for (long j = ai; j <= bi; ++j) mid.push_back(path[j]);
        std::sort(mid.begin(), mid.end());

        auto pa = path_from_set(g, hub_a, path[ai]);
        auto pb = path_from_set(g, hub_b, path[bi]);
        model.pattern_edges.emplace_back(0, 2 + i);
        model.connectors.push_back(pa);
        model.pattern_edges.emplace_back(1, 2 + i);
        model.connectors.push_back(pb);
    }
    return model;
}

MinorModelReport verify_minor_model(const WeightedGraph& g, const MinorModel& model) {
    MinorModelReport rep;
    std::vector<int> owner(g.num_vertices(), -1);
    for (int i = 0; i < model.pattern_vertices; ++i) {
        if (model.branch_sets[i].empty()) {
            rep.failure = "empty branch set " + std::to_string(i);
            return rep;
        }
        for (int v : model.branch_sets[i]) {
            if (owner[v] >= 0) {
                rep.failure = "branch sets overlap at vertex " + std::to_string(v);
                return rep;
            }
            owner[v] = i;
        }
        auto sub = induce(g, model.branch_sets[i]);
        if (connected_components(sub.graph).size() != 1) {
            rep.failure = "branch set " + std::to_string(i) + " is not connected";
            return rep;
        }
    }
    if (model.connectors.size() != model.pattern_edges.size()) {
        rep.failure = "connector count mismatch";
        return rep;
    }
    std::vector<char> used(g.num_vertices(), 0);
    for (std::size_t e = 0; e < model.connectors.size(); ++e) {
        auto [a, b] = model.pattern_edges[e];
        const auto& path = model.connectors[e];
        if (path.size() < 2) {
            rep.failure = "connector " + std::to_string(e) + " too short";
            return rep;
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            bool adjacent = false;
            for (int u : g.adj(path[i]))
                if (u == path[i + 1]) adjacent = true;
            if (!adjacent) {
                rep.failure = "connector " + std::to_string(e) + " not a path";
                return rep;
            }
        }
        if (owner[path.front()] != a || owner[path.back()] != b) {
            rep.failure = "connector " + std::to_string(e) + " endpoints wrong";
            return rep;
        }
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            int v = path[i];
            if (owner[v] >= 0) {
                rep.failure = "connector " + std::to_string(e) + " interior inside a branch set";
                return rep;
            }
            if (used[v]) {
                rep.failure = "connectors share interior vertex " + std::to_string(v);
                return rep;
            }
            used[v] = 1;
        }
    }
    rep.pass = true;
    return rep;
}

MinorModel lift_witness_apex(const WeightedGraph& g, const FatMinorModel& inner, int root,
                             double s, double t) {
    if (!(s > 0.0) || !(t > s)) throw std::invalid_argument("lift_witness_apex: need 0 < s < t");
    if (!(inner.q > 2.0 * (t - s)))
        throw std::invalid_argument("lift_witness_apex: fatness q must exceed 2(t-s)");
    int src[1] = {root};
    auto dist = dist_from(g, src);
    for (const auto& set : inner.branch_sets)
        for (int v : set)
            if (dist[v] < s - kEps || dist[v] > t + kEps)
                throw std::invalid_argument("lift_witness_apex: model leaves the band");

    int np = inner.pattern_vertices;
    MinorModel out;
    out.pattern_vertices = np + 1;  // apex appended
    out.branch_sets.resize(np + 1);

    std::vector<char> in_aug(g.num_vertices(), 0);
    std::vector<std::vector<char>> aug_of(np, std::vector<char>(g.num_vertices(), 0));
    std::vector<std::pair<int, int>> apex_edges(np);  // (last band vertex, first ball vertex)
    for (int u = 0; u < np; ++u) {
        auto path = path_from_set(g, inner.branch_sets[u], root);
        // walk from the branch-set end while staying in the band
        std::vector<int> stub;
        std::size_t i = 0;
        for (; i < path.size(); ++i) {
            if (dist[path[i]] < s - kEps) break;
            stub.push_back(path[i]);
        }
        if (i >= path.size())
            throw std::logic_error("lift_witness_apex: path to the root never leaves the band");
        apex_edges[u] = {stub.back(), path[i]};
        auto& set = out.branch_sets[u];
        set = inner.branch_sets[u];
        for (int v : stub)
            if (!std::binary_search(inner.branch_sets[u].begin(), inner.branch_sets[u].end(), v))
                set.push_back(v);
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (int v : set) {
            aug_of[u][v] = 1;
            in_aug[v] = 1;
        }
    }
    // apex branch set: the inner ball
    for (int v = 0; v < g.num_vertices(); ++v)
        if (dist[v] < s - kEps) out.branch_sets[np].push_back(v);
    if (out.branch_sets[np].empty())
        throw std::logic_error("lift_witness_apex: empty inner ball");

    // original connectors, trimmed to minimal subpaths between augmented sets
    for (std::size_t e = 0; e < inner.pattern_edges.size(); ++e) {
        auto [a, b] = inner.pattern_edges[e];
        const auto& path = inner.connectors[e];
        long i1 = -1;
        for (std::size_t i = 0; i < path.size(); ++i)
            if (aug_of[a][path[i]]) i1 = static_cast<long>(i);
        long i2 = -1;
        for (long i = i1 + 1; i < static_cast<long>(path.size()); ++i)
            if (aug_of[b][path[i]]) {
                i2 = i;
                break;
            }
        if (i1 < 0 || i2 < 0)
            throw std::logic_error("lift_witness_apex: connector lost its endpoints");
        out.pattern_edges.emplace_back(a, b);
        out.connectors.emplace_back(path.begin() + i1, path.begin() + i2 + 1);
    }
    // apex connectors: the crossing edges found on the root paths
    for (int u = 0; u < np; ++u) {
        out.pattern_edges.emplace_back(u, np);
        out.connectors.push_back({apex_edges[u].first, apex_edges[u].second});
    }
    return out;
}

// ---- JSON ----

std::string fat_model_to_json(const FatMinorModel& m) {
    nlohmann::ordered_json j;
    j["q"] = m.q;
    j["pattern_vertices"] = m.pattern_vertices;
    j["pattern_edges"] = m.pattern_edges;
    j["branch_sets"] = m.branch_sets;
    j["connectors"] = m.connectors;
    return j.dump() + "\n";
}

FatMinorModel fat_model_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    FatMinorModel m;
    m.q = j.at("q").get<double>();
    m.pattern_vertices = j.at("pattern_vertices").get<int>();
    m.pattern_edges = j.at("pattern_edges").get<std::vector<std::pair<int, int>>>();
    m.branch_sets = j.at("branch_sets").get<std::vector<std::vector<int>>>();
    m.connectors = j.at("connectors").get<std::vector<std::vector<int>>>();
    return m;
}

// ---- pipelines ----

double k3p_certificate(int p, double r, double slab_width) {
    double S = slab_width < 0.0 ? r : slab_width;
    return (5.0 * r + 27.0 * (S + 2.0 * r) + 9.0) * std::max(p, 2);
}

Cover k3p_pipeline(const WeightedGraph& g, int p, double r, double slab_width) {
    if (!(r > 0.0)) throw std::invalid_argument("k3p_pipeline: r must be positive");
    if (p < 1) throw std::invalid_argument("k3p_pipeline: p must be positive");
    int p_eff = std::max(p, 2);
    double S = slab_width < 0.0 ? r : slab_width;
    if (S < r) throw std::invalid_argument("k3p_pipeline: slab width below r");

    WeightedGraph g2 = split_heavy_edges(g, 1.0);
    auto L = bfs_layering(g2, 0);

    SlabOracle oracle = [p_eff](const SlabProblem& sp) -> Cover {
        double q_slab = 3.0 * sp.span;
        return annulus_cover(sp.graph, sp.r, q_slab, 1.0, p_eff, Exec::serial);
    };
    Cover cover = parity_combine(g2, L, r, S, oracle, 2);
    cover.producer = "k3p_pipeline";

    // restrict to the original vertices (subdivision points carry no claim;
    // distances between original vertices are unchanged by the split)
    if (g2.num_vertices() != g.num_vertices()) {
        for (auto& fam : cover.families) {
            std::vector<std::vector<int>> kept;
            for (auto& set : fam) {
                std::vector<int> s;
                for (int v : set)
                    if (v < g.num_vertices()) s.push_back(v);
                if (!s.empty()) kept.push_back(std::move(s));
            }
            fam = std::move(kept);
        }
    }
    return cover;
}

Cover genus_pipeline(const WeightedGraph& g, int genus, double r, double slab_width) {
    if (genus < 0) throw std::invalid_argument("genus_pipeline: genus must be nonnegative");
    Cover c = k3p_pipeline(g, 2 * genus + 3, r, slab_width);
    c.producer = "genus_pipeline";
    return c;
}

} // namespace wdc
