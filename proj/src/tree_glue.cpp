#include "wdc/tree_glue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wdc/layer_combine.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wdc {

FStarParams FStarParams::make(int ell, double n, int m, int theta) {
    if (ell < 1 || m < 2 || theta < 0)
        throw std::invalid_argument("FStarParams: need ell >= 1, m >= 2, theta >= 0");
    FStarParams p;
    p.ell = ell;
    p.n = std::max(n, 1.0);
    p.m = m;
    p.theta = theta;
    p.n_fplus = std::max(centered_bound(1, 0.0, p.n), p.n);
    p.n_theta = std::max(centered_bound(theta, 0.0, 1.0), static_cast<double>(theta) + 1.0);
    p.n_theta_prime = centered_bound(theta, 3.0 * ell, 1.0);
    return p;
}

double FStarParams::f1(double x) const {
    return centered_bound(theta, 3.0 * ell, std::max(x, 1.0));
}

double fstar(const FStarParams& p, int eta) {
    if (eta < 0) throw std::invalid_argument("fstar: eta must be nonnegative");
    double f0 = p.n_fplus + p.n_theta_prime + p.n_theta + p.f1(p.n);
    double f = f0;
    for (int x = 1; x <= eta; ++x)
        f = std::max((14.0 * p.theta + 4.0) * p.ell + 7.0 * p.theta * p.ell * p.ell * p.f1(f), f0);
    return f;
}

namespace {

struct Measure {
    long eta = 0, mass = 0, nodes = 0;
    bool less_than(const Measure& o) const {
        if (eta != o.eta) return eta < o.eta;
        if (mass != o.mass) return mass < o.mass;
        return nodes < o.nodes;
    }
};

Measure measure_of(const WeightedGraph& g, const RootedTreeDecomposition& td, int eta,
                   std::size_t zsize) {
    long internal = 0;
    std::vector<char> has_child(td.num_nodes(), 0);
    for (int t = 0; t < td.num_nodes(); ++t)
        if (td.parent[t] >= 0) has_child[td.parent[t]] = 1;
    for (int t = 0; t < td.num_nodes(); ++t) internal += has_child[t];
    Measure m;
    m.eta = eta;
    m.mass = internal + (g.num_vertices() - static_cast<long>(zsize)) + g.num_vertices();
    m.nodes = td.num_nodes();
    return m;
}

struct GlueCtx {
    int ell = 1;
    int m = 2;
    const BagOracle* oracle = nullptr;
    const FStarParams* params = nullptr;
    ExtendOptions opts;
};

struct Job {
    WeightedGraph graph;
    std::vector<int> to_solve;  // local -> solve-level index
    std::vector<int> orig_of;   // local -> original input vertex, -1 synthetic
    RootedTreeDecomposition td; // bags in local ids
    int eta = 0;
    std::vector<int> z;         // local ids, aligned with z_colors
    std::vector<int> z_colors;
    Measure parent_measure;
};

struct StepOut {
    std::vector<std::pair<int, int>> assign;  // (solve index, colour)
    std::vector<Job> subjobs;
};

std::vector<int> glue_solve(const WeightedGraph& graph, std::vector<int> orig_of,
                            RootedTreeDecomposition td, int eta, std::vector<int> z,
                            std::vector<int> z_colors, const GlueCtx& ctx,
                            Measure parent_measure);

// oracle invocation with contract checks; `where` names the bag for errors
ColoredPartition call_oracle(const GlueCtx& ctx, const WeightedGraph& graph,
                             std::vector<int> core, std::vector<int> parent_vertex,
                             const std::string& where) {
    BagSubproblem sub{graph, std::move(core), std::move(parent_vertex), ctx.ell};
    ColoredPartition col = (*ctx.oracle)(sub);
    if (col.ell != ctx.ell)
        throw std::runtime_error("bag oracle returned wrong power scale at " + where);
    if (static_cast<int>(col.colors.size()) != graph.num_vertices())
        throw std::runtime_error("bag oracle returned wrong colour count at " + where);
    for (int c : col.colors)
        if (c < 0 || c >= ctx.m)
            throw std::runtime_error("bag oracle used colour outside [m] at " + where);
    if (col.bound > ctx.params->n + 1e-9)
        throw std::runtime_error("bag oracle bound violation at " + where + ": declared " +
                                 std::to_string(col.bound) + " exceeds promised " +
                                 std::to_string(ctx.params->n));
    if (ctx.opts.spot_verify_limit >= 0 &&
        graph.num_vertices() <= ctx.opts.spot_verify_limit) {
        auto rep = verify_coloring(graph, col, Exec::serial);
        if (!rep.pass)
            throw std::runtime_error("bag oracle colouring fails verification at " + where);
    }
    return col;
}

// vertex set of the subtree rooted at `top` (bag union, sorted)
std::vector<int> subtree_vertices(const RootedTreeDecomposition& td,
                                  const std::vector<std::vector<int>>& children, int top,
                                  std::vector<int>& node_scratch) {
    node_scratch.clear();
    node_scratch.push_back(top);
    std::vector<int> verts;
    for (std::size_t i = 0; i < node_scratch.size(); ++i) {
        int t = node_scratch[i];
        verts.insert(verts.end(), td.bags[t].begin(), td.bags[t].end());
        for (int c : children[t]) node_scratch.push_back(c);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// drops nodes whose whole subtree carries no vertices (the root survives)
void prune_empty_subtrees(RootedTreeDecomposition& td) {
    int n = td.num_nodes();
    auto children = td.children();
    std::vector<long> load(n, 0);
    // post-order accumulation
    std::vector<int> order;
    order.push_back(td.root);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int c : children[order[i]]) order.push_back(c);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        load[*it] += static_cast<long>(td.bags[*it].size());
        if (td.parent[*it] >= 0) load[td.parent[*it]] += load[*it];
    }
    std::vector<int> new_id(n, -1);
    RootedTreeDecomposition out;
    for (int t : order)
        if (load[t] > 0 || t == td.root) {
            new_id[t] = out.num_nodes();
            out.bags.push_back(std::move(td.bags[t]));
            out.parent.push_back(td.parent[t] < 0 ? -1 : new_id[td.parent[t]]);
        }
    out.root = new_id[td.root];
    td = std::move(out);
}

StepOut glue_step(const Job& job, const GlueCtx& ctx) {
    StepOut out;
    const WeightedGraph& g = job.graph;
    int n = g.num_vertices();
    const int m = ctx.m;
    const int ell = ctx.ell;
    const int theta = ctx.params->theta;
    const double three_ell = 3.0 * ell;

    Measure my = measure_of(g, job.td, job.eta, job.z.size());
    if (ctx.opts.check_measure && !my.less_than(job.parent_measure))
        throw std::logic_error("glue recursion measure failed to decrease");

    if (n == 0) return out;

    auto push_assign = [&](int local, int colour) {
        out.assign.emplace_back(job.to_solve[local], colour);
    };

    // precolouring covers everything
    if (static_cast<int>(job.z.size()) == n) {
        for (std::size_t i = 0; i < job.z.size(); ++i) push_assign(job.z[i], job.z_colors[i]);
        return out;
    }

    RootedTreeDecomposition td = job.td;
    prune_empty_subtrees(td);

    std::vector<int> zcol_of(n, -1);
    for (std::size_t i = 0; i < job.z.size(); ++i) zcol_of[job.z[i]] = job.z_colors[i];

    // ---- base case ----
    if (job.eta == 0) {
        auto children = td.children();
        // tree components after removing empty-adhesion edges
        std::vector<int> comp_of(td.num_nodes(), -1);
        std::vector<int> comp_top;
        std::vector<int> order{td.root};
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int c : children[order[i]]) order.push_back(c);
        for (int t : order) {
            int p = td.parent[t];
            bool cut = p < 0 || sorted_intersection(td.bags[t], td.bags[p]).empty();
            if (cut) {
                comp_of[t] = static_cast<int>(comp_top.size());
                comp_top.push_back(t);
            } else {
                comp_of[t] = comp_of[p];
            }
        }
        std::vector<int> scratch;
        for (std::size_t ci = 0; ci < comp_top.size(); ++ci) {
            int top = comp_top[ci];
            // collect component nodes and the star-centre bag
            std::vector<int> verts;
            {
                std::vector<int> stack{top};
                while (!stack.empty()) {
                    int t = stack.back();
                    stack.pop_back();
                    verts.insert(verts.end(), td.bags[t].begin(), td.bags[t].end());
                    for (int c : children[t])
                        if (comp_of[c] == static_cast<int>(ci)) stack.push_back(c);
                }
                std::sort(verts.begin(), verts.end());
                verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
            }
            if (verts.empty()) continue;
            std::vector<int> zc;
            for (int v : verts)
                if (zcol_of[v] >= 0) zc.push_back(v);

            const std::vector<int>& centre_bag = td.bags[top];
            std::string where = "bag " + std::to_string(top);

            if (zc.empty()) {
                auto ind = induce(g, verts);
                std::vector<int> core, po(ind.graph.num_vertices());
                std::vector<int> local(n, -1);
                for (int i = 0; i < ind.graph.num_vertices(); ++i) {
                    local[ind.to_parent[i]] = i;
                    po[i] = job.orig_of[ind.to_parent[i]];
                }
                for (int v : centre_bag)
                    if (local[v] >= 0) core.push_back(local[v]);
                auto col = call_oracle(ctx, ind.graph, core, po, where);
                for (int i = 0; i < ind.graph.num_vertices(); ++i)
                    push_assign(ind.to_parent[i], col.colors[i]);
            } else {
                // colour the component minus Z, then merge the precolouring
                std::vector<int> rest;
                for (int v : verts)
                    if (zcol_of[v] < 0) rest.push_back(v);
                auto indc = induce(g, verts);
                std::vector<int> local_c(n, -1);
                for (int i = 0; i < indc.graph.num_vertices(); ++i)
                    local_c[indc.to_parent[i]] = i;

                std::vector<int> base_colors(indc.graph.num_vertices(), -1);
                double base_bound = 1.0;
                if (!rest.empty()) {
                    auto ind = induce(g, rest);
                    std::vector<int> core, po(ind.graph.num_vertices());
                    std::vector<int> local(n, -1);
                    for (int i = 0; i < ind.graph.num_vertices(); ++i) {
                        local[ind.to_parent[i]] = i;
                        po[i] = job.orig_of[ind.to_parent[i]];
                    }
                    for (int v : centre_bag)
                        if (local[v] >= 0) core.push_back(local[v]);
                    auto col = call_oracle(ctx, ind.graph, core, po, where);
                    base_bound = std::max(col.bound, 1.0);
                    for (int i = 0; i < ind.graph.num_vertices(); ++i)
                        base_colors[local_c[ind.to_parent[i]]] = col.colors[i];
                }
                CenteredSetClaim claim;
                for (int v : zc) claim.z.push_back(local_c[v]);
                for (int v : td.bags[td.root])
                    if (local_c[v] >= 0) claim.centers.push_back(local_c[v]);
                claim.k = theta;
                claim.r = three_ell;
                std::vector<int> zcols;
                for (int v : zc) zcols.push_back(zcol_of[v]);
                auto merged =
                    merge_centered(indc.graph, claim, base_colors, base_bound, m, zcols, ell);
                for (int i = 0; i < indc.graph.num_vertices(); ++i)
                    push_assign(indc.to_parent[i], merged.colors[i]);
            }
        }
        return out;
    }

    // ---- eta >= 1 ----

    // split into connected components first
    auto comps = connected_components(g);
    if (comps.size() > 1) {
        auto children = td.children();
        for (const auto& comp : comps) {
            std::vector<char> in_comp(n, 0);
            for (int v : comp) in_comp[v] = 1;
            // nodes whose bags meet the component form a subtree
            std::vector<char> keep(td.num_nodes(), 0);
            for (int t = 0; t < td.num_nodes(); ++t)
                for (int v : td.bags[t])
                    if (in_comp[v]) {
                        keep[t] = 1;
                        break;
                    }
            int top = -1;
            {
                std::vector<int> order{td.root};
                for (std::size_t i = 0; i < order.size() && top < 0; ++i) {
                    if (keep[order[i]]) top = order[i];
                    for (int c : children[order[i]]) order.push_back(c);
                }
            }
            if (top < 0) throw std::logic_error("component not reflected in any bag");

            auto ind = induce(g, comp);
            std::vector<int> local(n, -1);
            for (int i = 0; i < ind.graph.num_vertices(); ++i) local[ind.to_parent[i]] = i;

            Job sub;
            sub.graph = std::move(ind.graph);
            sub.to_solve.resize(comp.size());
            sub.orig_of.resize(comp.size());
            for (std::size_t i = 0; i < comp.size(); ++i) {
                sub.to_solve[i] = job.to_solve[ind.to_parent[i]];
                sub.orig_of[i] = job.orig_of[ind.to_parent[i]];
            }
            std::vector<int> new_id(td.num_nodes(), -1);
            for (int t = 0; t < td.num_nodes(); ++t) {
                if (!keep[t]) continue;
                new_id[t] = sub.td.num_nodes();
                std::vector<int> bag;
                for (int v : td.bags[t])
                    if (in_comp[v]) bag.push_back(local[v]);
                sub.td.bags.push_back(std::move(bag));
                sub.td.parent.push_back(-2);
            }
            for (int t = 0; t < td.num_nodes(); ++t) {
                if (!keep[t]) continue;
                int p = td.parent[t];
                sub.td.parent[new_id[t]] = (t == top) ? -1 : new_id[p];
                if (t != top && (p < 0 || new_id[p] < 0))
                    throw std::logic_error("component bag subtree is not connected");
            }
            sub.td.root = new_id[top];
            sub.eta = job.eta;
            sub.parent_measure = my;
            if (top == td.root) {
                for (std::size_t i = 0; i < job.z.size(); ++i)
                    if (in_comp[job.z[i]]) {
                        sub.z.push_back(local[job.z[i]]);
                        sub.z_colors.push_back(job.z_colors[i]);
                    }
            } else {
                for (int v : job.z)
                    if (in_comp[v])
                        throw std::logic_error("precoloured vertex in a rootless component");
                // fresh single-vertex root anchored in the top bag
                int v0 = -1;
                for (int v : sub.td.bags[sub.td.root]) {
                    v0 = v;
                    break;
                }
                if (v0 < 0) throw std::logic_error("empty top bag in a rootless component");
                int fresh = sub.td.num_nodes();
                sub.td.bags.push_back({v0});
                sub.td.parent.push_back(-1);
                sub.td.parent[sub.td.root] = fresh;
                sub.td.root = fresh;
            }
            out.subjobs.push_back(std::move(sub));
        }
        return out;
    }

    // connected: saturate the precolouring to the full 3*ell-neighbourhood
    const std::vector<int>& root_bag = td.bags[td.root];
    if (root_bag.empty()) throw std::logic_error("empty root bag with eta >= 1");
    auto znew = neighborhood(g, root_bag, three_ell);
    {
        std::vector<char> in_new(n, 0);
        for (int v : znew) in_new[v] = 1;
        for (int v : job.z)
            if (!in_new[v])
                throw std::invalid_argument(
                    "precoloured vertex " + std::to_string(job.to_solve[v]) +
                    " lies outside the 3*ell-neighbourhood of the root bag");
    }
    std::vector<int> z = job.z, zcols = job.z_colors;
    for (int v : znew)
        if (zcol_of[v] < 0) {
            zcol_of[v] = m - 1;
            z.push_back(v);
            zcols.push_back(m - 1);
        }
    if (static_cast<int>(z.size()) == n) {
        for (std::size_t i = 0; i < z.size(); ++i) push_assign(z[i], zcols[i]);
        return out;
    }

    auto children = td.children();
    std::vector<char> in_t0(td.num_nodes(), 0);
    for (int t = 0; t < td.num_nodes(); ++t)
        for (int v : td.bags[t])
            if (zcol_of[v] >= 0) {
                in_t0[t] = 1;
                break;
            }
    if (!in_t0[td.root]) throw std::logic_error("root bag escaped the saturated set");

    struct Boundary {
        int child = -1;                  // subtree side node
        std::vector<int> adhesion;       // X_e, job-local ids
        InducedSubgraph ge;              // induced G_e
        std::vector<int> ge_local;       // job-local -> ge-local (-1 outside)
        std::vector<std::vector<int>> parts;  // partition of X_e, job-local ids
    };
    std::vector<Boundary> bes;
    std::vector<int> scratch;
    for (int t : [&] {
             std::vector<int> order{td.root};
             for (std::size_t i = 0; i < order.size(); ++i)
                 for (int c : children[order[i]]) order.push_back(c);
             return order;
         }()) {
        for (int c : children[t]) {
            if (!in_t0[t] || in_t0[c]) continue;
            Boundary b;
            b.child = c;
            b.adhesion = sorted_intersection(td.bags[t], td.bags[c]);
            if (b.adhesion.empty())
                throw std::logic_error("empty adhesion on a boundary edge of a connected graph");
            auto verts = subtree_vertices(td, children, c, scratch);
            b.ge = induce(g, verts);
            b.ge_local.assign(n, -1);
            for (int i = 0; i < b.ge.graph.num_vertices(); ++i)
                b.ge_local[b.ge.to_parent[i]] = i;
            // parts: components of the adhesion under hops of length <= 7*ell in G_e
            {
                std::vector<int> idx(b.adhesion.size());
                for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
                std::vector<int> parent(idx.size());
                for (std::size_t i = 0; i < idx.size(); ++i) parent[i] = static_cast<int>(i);
                std::function<int(int)> find = [&](int x) {
                    while (parent[x] != x) {
                        parent[x] = parent[parent[x]];
                        x = parent[x];
                    }
                    return x;
                };
                DijkstraWorkspace ws;
                for (std::size_t i = 0; i < b.adhesion.size(); ++i) {
                    int src[1] = {b.ge_local[b.adhesion[i]]};
                    ws.run(b.ge.graph, src, 7.0 * ell, [&](int v, double) {
                        int pv = b.ge.to_parent[v];
                        auto it = std::lower_bound(b.adhesion.begin(), b.adhesion.end(), pv);
                        if (it != b.adhesion.end() && *it == pv) {
                            int j = static_cast<int>(it - b.adhesion.begin());
                            int ra = find(static_cast<int>(i)), rb = find(j);
                            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
                        }
                    });
                }
                std::vector<int> part_of(idx.size(), -1);
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    int r = find(static_cast<int>(i));
                    if (part_of[r] < 0) {
                        part_of[r] = static_cast<int>(b.parts.size());
                        b.parts.emplace_back();
                    }
                    b.parts[part_of[r]].push_back(b.adhesion[i]);
                }
            }
            bes.push_back(std::move(b));
        }
    }

    // ---- gadget graph H over G_0 ----
    std::vector<int> v0_verts;
    for (int t = 0; t < td.num_nodes(); ++t)
        if (in_t0[t]) v0_verts.insert(v0_verts.end(), td.bags[t].begin(), td.bags[t].end());
    std::sort(v0_verts.begin(), v0_verts.end());
    v0_verts.erase(std::unique(v0_verts.begin(), v0_verts.end()), v0_verts.end());

    std::vector<int> h_local(n, -1);
    for (std::size_t i = 0; i < v0_verts.size(); ++i) h_local[v0_verts[i]] = static_cast<int>(i);
    int n_h = static_cast<int>(v0_verts.size());
    std::vector<std::pair<int, int>> gadget_of;  // (boundary idx, part idx) per gadget vertex
    for (std::size_t bi = 0; bi < bes.size(); ++bi)
        for (std::size_t pi = 0; pi < bes[bi].parts.size(); ++pi)
            gadget_of.emplace_back(static_cast<int>(bi), static_cast<int>(pi));
    int n_gadgets = static_cast<int>(gadget_of.size());

    GraphBuilder hb(n_h + n_gadgets);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        int u = h_local[g.edge_u(e)], v = h_local[g.edge_v(e)];
        if (u >= 0 && v >= 0) hb.add_edge(u, v, g.edge_weight(e));
    }
    for (int gi = 0; gi < n_gadgets; ++gi) {
        auto [bi, pi] = gadget_of[gi];
        for (int v : bes[bi].parts[pi]) hb.add_edge(n_h + gi, h_local[v], 1.0);
    }
    WeightedGraph h = std::move(hb).build();

    // construction of H: T_0 nodes plus one leaf per gadget
    RootedTreeDecomposition tdh;
    std::vector<int> h_node(td.num_nodes(), -1);
    for (int t = 0; t < td.num_nodes(); ++t) {
        if (!in_t0[t]) continue;
        h_node[t] = tdh.num_nodes();
        std::vector<int> bag;
        for (int v : td.bags[t]) bag.push_back(h_local[v]);
        std::sort(bag.begin(), bag.end());
        tdh.bags.push_back(std::move(bag));
        tdh.parent.push_back(-2);
    }
    for (int t = 0; t < td.num_nodes(); ++t)
        if (in_t0[t])
            tdh.parent[h_node[t]] = td.parent[t] < 0 ? -1 : h_node[td.parent[t]];
    tdh.root = h_node[td.root];
    std::vector<int> gadget_node(n_gadgets, -1);
    for (int gi = 0; gi < n_gadgets; ++gi) {
        auto [bi, pi] = gadget_of[gi];
        int attach = td.parent[bes[bi].child];  // the T_0 end of the boundary edge
        std::vector<int> bag;
        for (int v : bes[bi].adhesion) bag.push_back(h_local[v]);
        bag.push_back(n_h + gi);
        std::sort(bag.begin(), bag.end());
        gadget_node[gi] = tdh.num_nodes();
        tdh.bags.push_back(std::move(bag));
        tdh.parent.push_back(h_node[attach]);
    }

    // H - Z and its construction at eta - 1
    std::vector<char> in_z_h(n_h + n_gadgets, 0);
    for (int v : z) {
        if (h_local[v] < 0) throw std::logic_error("saturated vertex escaped G_0");
        in_z_h[h_local[v]] = 1;
    }
    RootedTreeDecomposition tdm;  // bags in H ids, minus Z (plus anchor vertex)
    tdm.parent = tdh.parent;
    tdm.root = tdh.root;
    tdm.bags.resize(tdh.num_nodes());
    for (int t = 0; t < tdh.num_nodes(); ++t)
        for (int v : tdh.bags[t])
            if (!in_z_h[v]) tdm.bags[t].push_back(v);

    if (job.eta - 1 > 0) {
        // anchor a fresh one-vertex root; v0 comes from the nonempty bag
        // closest to the root (breadth-first, least node id)
        int t0 = -1;
        {
            std::vector<int> order{tdm.root};
            auto chh = tdm.children();
            for (std::size_t i = 0; i < order.size() && t0 < 0; ++i) {
                if (!tdm.bags[order[i]].empty()) t0 = order[i];
                for (int c : chh[order[i]]) order.push_back(c);
            }
        }
        if (t0 < 0) throw std::logic_error("H-Z has vertices but only empty bags");
        int v0 = *std::min_element(tdm.bags[t0].begin(), tdm.bags[t0].end());
        // add v0 along the path from the root to t0
        for (int t = t0; t >= 0; t = tdm.parent[t]) {
            if (!std::binary_search(tdm.bags[t].begin(), tdm.bags[t].end(), v0)) {
                tdm.bags[t].push_back(v0);
                std::sort(tdm.bags[t].begin(), tdm.bags[t].end());
            }
            if (t == tdm.root) break;
        }
        int fresh = tdm.num_nodes();
        tdm.bags.push_back({v0});
        tdm.parent.push_back(-1);
        tdm.parent[tdm.root] = fresh;
        tdm.root = fresh;
    }

    std::vector<int> hz_verts;
    for (int v = 0; v < n_h + n_gadgets; ++v)
        if (!in_z_h[v]) hz_verts.push_back(v);
    auto hz = induce(h, hz_verts);
    std::vector<int> hz_local(n_h + n_gadgets, -1);
    for (int i = 0; i < hz.graph.num_vertices(); ++i) hz_local[hz.to_parent[i]] = i;

    RootedTreeDecomposition tdz;
    tdz.parent = tdm.parent;
    tdz.root = tdm.root;
    tdz.bags.resize(tdm.num_nodes());
    for (int t = 0; t < tdm.num_nodes(); ++t)
        for (int v : tdm.bags[t]) tdz.bags[t].push_back(hz_local[v]);
    for (auto& b : tdz.bags) std::sort(b.begin(), b.end());

    std::vector<int> hz_orig(hz.graph.num_vertices());
    for (int i = 0; i < hz.graph.num_vertices(); ++i) {
        int hv = hz.to_parent[i];
        hz_orig[i] = hv < n_h ? job.orig_of[v0_verts[hv]] : -1;
    }
    std::vector<int> chz =
        glue_solve(hz.graph, hz_orig, tdz, job.eta - 1, {}, {}, ctx, my);

    // merge the precolouring with the H-Z colouring
    std::vector<int> base_h(n_h + n_gadgets, -1);
    for (int i = 0; i < hz.graph.num_vertices(); ++i) base_h[hz.to_parent[i]] = chz[i];
    CenteredSetClaim claim;
    claim.k = theta;
    claim.r = three_ell;
    for (int v : root_bag) claim.centers.push_back(h_local[v]);
    std::vector<int> zc_h;
    for (std::size_t i = 0; i < z.size(); ++i) {
        claim.z.push_back(h_local[z[i]]);
        zc_h.push_back(zcols[i]);
    }
    auto ch = merge_centered(h, claim, base_h, fstar(*ctx.params, job.eta - 1), m, zc_h, ell);

    // first gadget-vertex index per boundary
    std::vector<int> gadget_offset(bes.size(), 0);
    for (std::size_t bi = 1; bi < bes.size(); ++bi)
        gadget_offset[bi] =
            gadget_offset[bi - 1] + static_cast<int>(bes[bi - 1].parts.size());

    // colour the shells inside each G_e and emit the recursive jobs
    for (std::size_t bi = 0; bi < bes.size(); ++bi) {
        auto& b = bes[bi];
        const WeightedGraph& ge = b.ge.graph;
        std::vector<int> adh_local;
        for (int v : b.adhesion) adh_local.push_back(b.ge_local[v]);
        std::vector<double> dist_s(ge.num_vertices(), -1.0);
        {
            DijkstraWorkspace ws;
            ws.run(ge, adh_local, 3.0 * ell, [&](int v, double d) { dist_s[v] = d; });
        }
        // nearest part within ell decides the gadget colour
        std::vector<int> part_within_ell(ge.num_vertices(), -1);
        std::vector<char> part_conflict(ge.num_vertices(), 0);
        {
            DijkstraWorkspace ws;
            for (std::size_t pi = 0; pi < b.parts.size(); ++pi) {
                std::vector<int> srcs;
                for (int v : b.parts[pi]) srcs.push_back(b.ge_local[v]);
                ws.run(ge, srcs, static_cast<double>(ell), [&](int v, double) {
                    if (part_within_ell[v] >= 0 && part_within_ell[v] != static_cast<int>(pi))
                        part_conflict[v] = 1;
                    else
                        part_within_ell[v] = static_cast<int>(pi);
                });
            }
        }
        std::vector<int> ze, ze_cols;
        const int gadget_base = gadget_offset[bi];
        std::vector<char> in_adh(ge.num_vertices(), 0);
        for (int v : adh_local) in_adh[v] = 1;
        for (int v = 0; v < ge.num_vertices(); ++v) {
            if (dist_s[v] < 0.0) continue;  // beyond 3*ell
            int colour;
            if (in_adh[v]) {
                colour = ch.colors[h_local[b.ge.to_parent[v]]];
            } else if (dist_s[v] <= static_cast<double>(ell)) {
                if (part_within_ell[v] < 0 || part_conflict[v])
                    throw std::logic_error("boundary vertex lacks a unique nearby part");
                colour = ch.colors[n_h + gadget_base + part_within_ell[v]];
            } else if (dist_s[v] <= 2.0 * ell) {
                colour = 0;
            } else {
                colour = 1;
            }
            ze.push_back(v);
            ze_cols.push_back(colour);
        }

        if (static_cast<int>(b.adhesion.size()) > job.eta) {
            // trivial leaf branch: at most one vertex beyond the adhesion
            if (ge.num_vertices() > theta + 1)
                throw std::logic_error("oversized trivial branch");
            std::vector<int> got(ge.num_vertices(), -1);
            for (std::size_t i = 0; i < ze.size(); ++i) got[ze[i]] = ze_cols[i];
            for (int v = 0; v < ge.num_vertices(); ++v)
                push_assign(b.ge.to_parent[v], got[v] < 0 ? 0 : got[v]);
            continue;
        }

        Job sub;
        sub.to_solve.resize(ge.num_vertices());
        sub.orig_of.resize(ge.num_vertices());
        for (int i = 0; i < ge.num_vertices(); ++i) {
            sub.to_solve[i] = job.to_solve[b.ge.to_parent[i]];
            sub.orig_of[i] = job.orig_of[b.ge.to_parent[i]];
        }
        // rooted construction: fresh root bagged with the adhesion
        std::vector<int> tnodes;
        {
            std::vector<int> stack{b.child};
            while (!stack.empty()) {
                int t = stack.back();
                stack.pop_back();
                tnodes.push_back(t);
                for (int c : children[t]) stack.push_back(c);
            }
            std::sort(tnodes.begin(), tnodes.end());
        }
        std::vector<int> tid(td.num_nodes(), -1);
        for (std::size_t i = 0; i < tnodes.size(); ++i) tid[tnodes[i]] = static_cast<int>(i);
        for (int t : tnodes) {
            std::vector<int> bag;
            for (int v : td.bags[t]) bag.push_back(b.ge_local[v]);
            std::sort(bag.begin(), bag.end());
            sub.td.bags.push_back(std::move(bag));
            sub.td.parent.push_back(t == b.child ? -2 : tid[td.parent[t]]);
        }
        int fresh = sub.td.num_nodes();
        sub.td.bags.push_back(adh_local);
        std::sort(sub.td.bags[fresh].begin(), sub.td.bags[fresh].end());
        sub.td.parent.push_back(-1);
        sub.td.parent[tid[b.child]] = fresh;
        sub.td.root = fresh;
        sub.graph = b.ge.graph;
        sub.eta = job.eta;
        sub.z = std::move(ze);
        sub.z_colors = std::move(ze_cols);
        sub.parent_measure = my;
        out.subjobs.push_back(std::move(sub));
    }

    // G_0 itself is coloured by the merged gadget colouring
    for (int i = 0; i < n_h; ++i) push_assign(v0_verts[i], ch.colors[i]);
    return out;
}

std::vector<int> glue_solve(const WeightedGraph& graph, std::vector<int> orig_of,
                            RootedTreeDecomposition td, int eta, std::vector<int> z,
                            std::vector<int> z_colors, const GlueCtx& ctx,
                            Measure parent_measure) {
    int n = graph.num_vertices();
    std::vector<int> colors(n, -1);

    Job first;
    first.graph = graph;
    first.to_solve.resize(n);
    for (int i = 0; i < n; ++i) first.to_solve[i] = i;
    first.orig_of = std::move(orig_of);
    first.td = std::move(td);
    first.eta = eta;
    first.z = std::move(z);
    first.z_colors = std::move(z_colors);
    first.parent_measure = parent_measure;

    std::deque<Job> queue;
    queue.push_back(std::move(first));
    while (!queue.empty()) {
        std::vector<Job> batch;
        while (!queue.empty()) {
            batch.push_back(std::move(queue.front()));
            queue.pop_front();
        }
        std::vector<StepOut> outs(batch.size());
        std::vector<std::exception_ptr> errs(batch.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (batch.size() > 1)
#endif
        for (long i = 0; i < static_cast<long>(batch.size()); ++i) {
            try {
                outs[i] = glue_step(batch[i], ctx);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
        for (auto& o : outs) {
            for (auto [v, c] : o.assign) {
                if (colors[v] >= 0 && colors[v] != c)
                    throw std::logic_error("conflicting colour assignment");
                colors[v] = c;
            }
            for (auto& sj : o.subjobs) queue.push_back(std::move(sj));
        }
    }
    for (int v = 0; v < n; ++v)
        if (colors[v] < 0) throw std::logic_error("vertex left uncoloured by the recursion");
    return colors;
}

} // namespace

ColoredPartition extend_coloring(const WeightedGraph& g, const Construction& c,
                                 std::span<const int> z, std::span<const int> z_colors,
                                 int ell, int m, const BagOracle& oracle,
                                 const FStarParams& params, const ExtendOptions& opts) {
    if (m < 2) throw std::invalid_argument("extend_coloring requires m >= 2");
    if (!g.unit_weights())
        throw std::invalid_argument("extend_coloring requires a unit-weight graph");
    if (z.size() != z_colors.size())
        throw std::invalid_argument("extend_coloring: z and colour list lengths differ");
    auto rep = validate_construction(g, c);
    if (!rep.pass) throw std::invalid_argument("extend_coloring: construction fails validation");
    for (int col : z_colors)
        if (col < 0 || col >= m)
            throw std::invalid_argument("extend_coloring: precolour outside [m]");
    {
        auto near = neighborhood(g, c.td.bags[c.td.root], 3.0 * ell);
        std::vector<char> ok(g.num_vertices(), 0);
        for (int v : near) ok[v] = 1;
        for (int v : z)
            if (!ok[v])
                throw std::invalid_argument(
                    "extend_coloring: precoloured vertex " + std::to_string(v) +
                    " lies outside the 3*ell-neighbourhood of the root bag");
    }

    GlueCtx ctx;
    ctx.ell = ell;
    ctx.m = m;
    ctx.oracle = &oracle;
    ctx.params = &params;
    ctx.opts = opts;

    std::vector<int> orig(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) orig[v] = v;
    Measure top{std::numeric_limits<long>::max(), std::numeric_limits<long>::max(),
                std::numeric_limits<long>::max()};
    auto colors = glue_solve(g, std::move(orig), c.td, c.eta,
                             std::vector<int>(z.begin(), z.end()),
                             std::vector<int>(z_colors.begin(), z_colors.end()), ctx, top);

    for (std::size_t i = 0; i < z.size(); ++i)
        if (colors[z[i]] != z_colors[i])
            throw std::logic_error("extension failed to honour the precolouring");

    ColoredPartition out;
    out.ell = ell;
    out.num_colors = m;
    out.bound = fstar(params, c.eta);
    out.colors = std::move(colors);
    return out;
}

double tw_certificate(int w, int ell) {
    if (w <= 0) return 0.0;
    auto p = FStarParams::make(ell, centered_bound(w + 1, static_cast<double>(ell), 1.0), 2, w);
    return fstar(p, w);
}

namespace {

BagOracle make_vc_oracle(int k, int ell) {
    return [k, ell](const BagSubproblem& sub) -> ColoredPartition {
        std::vector<char> in_core(sub.graph.num_vertices(), 0);
        for (int v : sub.core) in_core[v] = 1;
        std::vector<int> cover(sub.core.begin(), sub.core.end());
        for (int v = 0; v < sub.graph.num_vertices(); ++v) {
            if (in_core[v]) continue;
            for (int u : sub.graph.adj(v))
                if (!in_core[u]) {
                    cover.push_back(v);
                    break;
                }
        }
        std::sort(cover.begin(), cover.end());
        cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
        return vc_color(sub.graph, cover, k, ell);
    };
}

} // namespace

ColoredPartition tw_pipeline(const WeightedGraph& g, const RootedTreeDecomposition& td, int ell,
                             int width_cap, const ExtendOptions& opts) {
    if (!g.unit_weights())
        throw std::invalid_argument("tw_pipeline requires a unit-weight graph");
    auto rep = validate_td(g, td);
    if (!rep.pass) throw std::invalid_argument("tw_pipeline: invalid tree decomposition");
    if (width_cap >= 0 && rep.width > width_cap)
        throw std::invalid_argument("tw_pipeline: width " + std::to_string(rep.width) +
                                    " exceeds cap " + std::to_string(width_cap));
    ColoredPartition out;
    out.ell = ell;
    out.num_colors = 2;
    if (g.num_vertices() == 0) return out;
    if (g.num_edges() == 0) {
        out.colors.assign(g.num_vertices(), 0);
        out.bound = 0.0;
        return out;
    }
    int w = std::max(rep.width, 1);
    auto reduced = reduce_td(td);
    auto cons = normalize(g, reduced, w);
    auto params =
        FStarParams::make(ell, centered_bound(w + 1, static_cast<double>(ell), 1.0), 2, w);
    auto oracle = make_vc_oracle(w + 1, ell);
    return extend_coloring(g, cons, {}, {}, ell, 2, oracle, params, opts);
}

// ---- minor pipeline ----

MinorDecomposition read_minor_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open decomposition file: " + path);
    nlohmann::json j;
    in >> j;
    MinorDecomposition dec;
    dec.td.bags = j.at("td").at("bags").get<std::vector<std::vector<int>>>();
    dec.td.parent = j.at("td").at("parent").get<std::vector<int>>();
    dec.td.root = j.at("td").value("root", 0);
    for (auto& b : dec.td.bags) std::sort(b.begin(), b.end());
    for (const auto& tj : j.at("torsos")) {
        TorsoData t;
        t.apex = tj.value("apex", std::vector<int>{});
        for (const auto& kv : tj.at("layers").get<std::vector<std::vector<int>>>()) {
            if (kv.size() != 2) throw std::runtime_error("bad layer record");
            t.layer_of[kv[0]] = kv[1];
        }
        t.td.bags = tj.at("td").at("bags").get<std::vector<std::vector<int>>>();
        t.td.parent = tj.at("td").at("parent").get<std::vector<int>>();
        t.td.root = tj.at("td").value("root", 0);
        for (auto& b : t.td.bags) std::sort(b.begin(), b.end());
        dec.torsos.push_back(std::move(t));
    }
    return dec;
}

void write_minor_decomposition_file(const std::string& path, const MinorDecomposition& dec) {
    nlohmann::ordered_json j;
    j["td"]["bags"] = dec.td.bags;
    j["td"]["parent"] = dec.td.parent;
    j["td"]["root"] = dec.td.root;
    j["torsos"] = nlohmann::ordered_json::array();
    for (const auto& t : dec.torsos) {
        nlohmann::ordered_json tj;
        tj["apex"] = t.apex;
        std::vector<std::vector<int>> layers;
        for (auto [v, l] : t.layer_of) layers.push_back({v, l});
        std::sort(layers.begin(), layers.end());
        tj["layers"] = layers;
        tj["td"]["bags"] = t.td.bags;
        tj["td"]["parent"] = t.td.parent;
        tj["td"]["root"] = t.td.root;
        j["torsos"].push_back(std::move(tj));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write decomposition file: " + path);
    out << j.dump() << '\n';
}

ColoredPartition minor_pipeline(const WeightedGraph& g, const MinorDecomposition& dec, int p,
                                int w, int ell, const ExtendOptions& opts) {
    if (!g.unit_weights())
        throw std::invalid_argument("minor_pipeline requires a unit-weight graph");
    auto rep = validate_td(g, dec.td);
    if (!rep.pass) throw std::invalid_argument("minor_pipeline: invalid tree decomposition");
    if (rep.adhesion > p)
        throw std::invalid_argument("minor_pipeline: adhesion exceeds p");
    if (dec.torsos.size() != dec.td.bags.size())
        throw std::invalid_argument("minor_pipeline: one torso certificate per bag required");
    for (std::size_t t = 0; t < dec.torsos.size(); ++t) {
        if (static_cast<int>(dec.torsos[t].apex.size()) > p)
            throw std::runtime_error("torso certificate fails at bag " + std::to_string(t) +
                                     ": apex set larger than p");
        // layer caps inside the torso decomposition
        for (std::size_t b = 0; b < dec.torsos[t].td.bags.size(); ++b) {
            std::vector<int> layers;
            for (int v : dec.torsos[t].td.bags[b]) {
                auto it = dec.torsos[t].layer_of.find(v);
                if (it == dec.torsos[t].layer_of.end())
                    throw std::runtime_error("torso certificate fails at bag " +
                                             std::to_string(t) + ": vertex " +
                                             std::to_string(v) + " has no layer");
                layers.push_back(it->second);
            }
            std::sort(layers.begin(), layers.end());
            int run = 0;
            for (std::size_t i = 0; i < layers.size(); ++i) {
                run = (i > 0 && layers[i] == layers[i - 1]) ? run + 1 : 1;
                if (run > w)
                    throw std::runtime_error("torso certificate fails at bag " +
                                             std::to_string(t) + ": layer " +
                                             std::to_string(layers[i]) + " cap exceeded");
            }
        }
    }

    ColoredPartition trivial;
    trivial.ell = ell;
    trivial.num_colors = 4;
    if (g.num_vertices() == 0) return trivial;

    // vertex -> bags hosting it, for host resolution
    std::vector<std::vector<int>> bags_of(g.num_vertices());
    for (int t = 0; t < dec.td.num_nodes(); ++t)
        for (int v : dec.td.bags[t]) bags_of[v].push_back(t);

    const int p_eff = std::max(p, 1);
    const int slab_w = w + 1;  // gadget closure may add one vertex per layer-bag cell
    double layered_cert = layered_tw_certificate(slab_w, ell);
    auto params = FStarParams::make(
        ell, centered_bound(p_eff, 0.0, std::max(layered_cert, 1.0)), 4, p_eff);

    BagOracle oracle = [&, p, w, ell](const BagSubproblem& sub) -> ColoredPartition {
        // resolve the decomposition bag hosting this core
        int host = -1;
        std::vector<int> core_orig;
        for (int lv : sub.core)
            if (sub.parent_vertex[lv] >= 0) core_orig.push_back(sub.parent_vertex[lv]);
        if (core_orig.empty()) {
            host = 0;
        } else {
            for (int cand : bags_of[core_orig[0]]) {
                bool all = true;
                for (int v : core_orig)
                    if (!std::binary_search(dec.td.bags[cand].begin(), dec.td.bags[cand].end(),
                                            v)) {
                        all = false;
                        break;
                    }
                if (all) {
                    host = cand;
                    break;
                }
            }
        }
        if (host < 0) throw std::runtime_error("minor oracle: no bag hosts the core");
        const TorsoData& torso = dec.torsos[host];

        std::vector<char> is_apex(sub.graph.num_vertices(), 0);
        std::vector<int> apex_local;
        for (int lv = 0; lv < sub.graph.num_vertices(); ++lv) {
            int ov = sub.parent_vertex[lv];
            if (ov >= 0 &&
                std::find(torso.apex.begin(), torso.apex.end(), ov) != torso.apex.end()) {
                is_apex[lv] = 1;
                apex_local.push_back(lv);
            }
        }

        Pipeline base = [&, host](const WeightedGraph& wg,
                                  const std::vector<int>& to_sub) -> ColoredPartition {
            const TorsoData& tor = dec.torsos[host];
            int nn = wg.num_vertices();
            // layering: torso layers where known, neighbour-derived otherwise
            std::vector<double> L(nn, 0.0);
            std::vector<char> resolved(nn, 0);
            for (int v = 0; v < nn; ++v) {
                int ov = sub.parent_vertex[to_sub[v]];
                if (ov >= 0) {
                    auto it = tor.layer_of.find(ov);
                    if (it != tor.layer_of.end()) {
                        L[v] = static_cast<double>(it->second);
                        resolved[v] = 1;
                    }
                }
            }
            bool none_resolved =
                std::find(resolved.begin(), resolved.end(), 1) == resolved.end();
            if (none_resolved && nn > 0) {
                // fully synthetic closure: a star around the single core
                // vertex (gadget neighbourhoods sit inside the core)
                int centre = -1;
                std::vector<char> core_sub(sub.graph.num_vertices(), 0);
                for (int cv : sub.core) core_sub[cv] = 1;
                for (int v = 0; v < nn; ++v)
                    if (core_sub[to_sub[v]]) {
                        centre = v;
                        break;
                    }
                if (centre < 0) centre = 0;
                RootedTreeDecomposition star;
                star.bags.push_back({centre});
                star.parent.push_back(-1);
                star.root = 0;
                std::vector<double> SL(nn, 1.0);
                SL[centre] = 0.0;
                for (int v = 0; v < nn; ++v) {
                    if (v == centre) continue;
                    star.bags.push_back({std::min(v, centre), std::max(v, centre)});
                    star.parent.push_back(0);
                }
                return layered_tw_pipeline(wg, SL, star, slab_w, ell);
            }
            for (int v = 0; v < nn; ++v) {
                if (resolved[v]) continue;
                bool any = false;
                double mn = 0.0;
                for (int u : wg.adj(v))
                    if (resolved[u]) {
                        mn = any ? std::min(mn, L[u]) : L[u];
                        any = true;
                    }
                L[v] = any ? mn : 0.0;
            }
            auto pchk = check_projection(wg, L);
            if (!pchk.ok)
                throw std::runtime_error("torso certificate fails at bag " +
                                         std::to_string(host) + ": layering invalid");

            // restrict the torso decomposition, then add one bag per vertex
            // not yet covered (gadget closure; neighbourhoods are cliques)
            std::vector<int> local_of_orig(g.num_vertices(), -1);
            for (int v = 0; v < nn; ++v) {
                int ov = sub.parent_vertex[to_sub[v]];
                if (ov >= 0) local_of_orig[ov] = v;
            }
            RootedTreeDecomposition wtd;
            wtd.root = tor.td.root;
            wtd.parent = tor.td.parent;
            wtd.bags.resize(tor.td.num_nodes());
            std::vector<char> covered(nn, 0);
            for (int t = 0; t < tor.td.num_nodes(); ++t)
                for (int ov : tor.td.bags[t]) {
                    int lv = local_of_orig[ov];
                    if (lv >= 0) {
                        wtd.bags[t].push_back(lv);
                        covered[lv] = 1;
                    }
                }
            for (auto& b : wtd.bags) std::sort(b.begin(), b.end());
            if (wtd.bags.empty()) {
                wtd.bags.push_back({});
                wtd.parent.push_back(-1);
                wtd.root = 0;
            }
            for (int v = 0; v < nn; ++v) {
                if (covered[v]) continue;
                std::vector<int> nb(wg.adj(v).begin(), wg.adj(v).end());
                std::sort(nb.begin(), nb.end());
                int attach = -1;
                for (int t = 0; t < wtd.num_nodes() && attach < 0; ++t)
                    if (std::includes(wtd.bags[t].begin(), wtd.bags[t].end(), nb.begin(),
                                      nb.end()))
                        attach = t;
                if (attach < 0)
                    throw std::runtime_error("torso certificate fails at bag " +
                                             std::to_string(host) +
                                             ": gadget neighbourhood is not inside a bag");
                nb.push_back(v);
                std::sort(nb.begin(), nb.end());
                wtd.parent.push_back(attach);
                wtd.bags.push_back(std::move(nb));
            }
            return layered_tw_pipeline(wg, L, wtd, slab_w, ell);
        };
        return apex_color(sub.graph, apex_local, base, ell);
    };

    auto cons = normalize(g, dec.td, p_eff);
    return extend_coloring(g, cons, {}, {}, ell, 4, oracle, params, opts);
}

} // namespace wdc
