#include "wdc/layer_combine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wdc/tree_glue.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wdc {

namespace {

SlabProblem make_expanded(const WeightedGraph& g, const std::vector<double>& L, const Slab& slab,
                          double r) {
    std::vector<int> verts;
    double lo = slab.lo - r, hi = slab.hi + r;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (L[v] >= lo && L[v] < hi) verts.push_back(v);
    auto ind = induce(g, verts);
    SlabProblem sp;
    sp.to_parent = std::move(ind.to_parent);
    sp.graph = std::move(ind.graph);
    sp.proj.resize(sp.to_parent.size());
    for (std::size_t i = 0; i < sp.to_parent.size(); ++i) sp.proj[i] = L[sp.to_parent[i]];
    sp.r = r;
    sp.span = (slab.hi - slab.lo) + 2.0 * r;
    return sp;
}

// oracle cover restricted to the slab core, lifted to parent vertex ids
std::vector<std::vector<std::vector<int>>> restrict_to_core(const SlabProblem& sp,
                                                            const Cover& oracle_cover,
                                                            const std::vector<int>& core) {
    std::vector<char> in_core;
    int maxv = 0;
    for (int v : core) maxv = std::max(maxv, v + 1);
    in_core.assign(maxv, 0);
    for (int v : core) in_core[v] = 1;
    std::vector<std::vector<std::vector<int>>> fams;
    for (const auto& fam : oracle_cover.families) {
        std::vector<std::vector<int>> out_fam;
        for (const auto& set : fam) {
            std::vector<int> lifted;
            for (int lv : set) {
                int pv = sp.to_parent[lv];
                if (pv < maxv && in_core[pv]) lifted.push_back(pv);
            }
            if (!lifted.empty()) {
                std::sort(lifted.begin(), lifted.end());
                out_fam.push_back(std::move(lifted));
            }
        }
        fams.push_back(std::move(out_fam));
    }
    return fams;
}

} // namespace

Cover intrinsic_expand(const WeightedGraph& g, const std::vector<double>& L, const Slab& slab,
                       const SlabOracle& oracle, double r) {
    auto chk = check_projection(g, L);
    if (!chk.ok)
        throw std::invalid_argument("intrinsic_expand: projection is not 1-Lipschitz on edge " +
                                    std::to_string(chk.offending_edge));
    SlabProblem sp = make_expanded(g, L, slab, r);
    Cover inner = oracle(sp);
    Cover out;
    out.scale = r;
    out.bound = inner.bound;
    out.producer = inner.producer.empty() ? "intrinsic_expand" : inner.producer + "+expand";
    out.families = restrict_to_core(sp, inner, slab.core);
    return out;
}

Cover parity_combine(const WeightedGraph& g, const std::vector<double>& L, double r, double S,
                     const SlabOracle& oracle, int families_per_slab) {
    if (S < r) throw std::invalid_argument("parity_combine: slab width must be at least r");
    auto chk = check_projection(g, L);
    if (!chk.ok)
        throw std::invalid_argument("parity_combine: projection is not 1-Lipschitz on edge " +
                                    std::to_string(chk.offending_edge));
    auto bands = slabs(g, L, S);

    Cover out;
    out.scale = r;
    out.producer = "parity_combine";
    out.families.assign(2 * static_cast<std::size_t>(families_per_slab), {});

    std::vector<std::vector<std::vector<std::vector<int>>>> per_slab(bands.size());
    std::vector<double> bounds(bands.size(), 0.0);
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(bands.size()); ++i) {
        try {
            SlabProblem sp = make_expanded(g, L, bands[i], r);
            Cover inner = oracle(sp);
            if (static_cast<int>(inner.families.size()) != families_per_slab)
                throw std::runtime_error("slab oracle returned " +
                                         std::to_string(inner.families.size()) +
                                         " families, expected " +
                                         std::to_string(families_per_slab));
            bounds[i] = inner.bound;
            per_slab[i] = restrict_to_core(sp, inner, bands[i].core);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    for (std::size_t i = 0; i < bands.size(); ++i) {
        out.bound = std::max(out.bound, bounds[i]);
        int parity = static_cast<int>(((bands[i].index % 2) + 2) % 2);
        for (int f = 0; f < families_per_slab; ++f) {
            auto& dst = out.families[static_cast<std::size_t>(parity * families_per_slab + f)];
            for (auto& set : per_slab[i][f]) dst.push_back(std::move(set));
        }
    }
    return out;
}

double layered_tw_certificate(int w, int ell, double slab_width) {
    double S = slab_width < 0.0 ? static_cast<double>(ell) : slab_width;
    double span = S + 2.0 * ell;
    int slab_w = std::max(1, static_cast<int>(std::ceil(w * span)) - 1);
    double cover_bound = static_cast<double>(ell) * tw_certificate(slab_w, ell);
    return std::floor(cover_bound);
}

ColoredPartition layered_tw_pipeline(const WeightedGraph& g, const std::vector<double>& L,
                                     const RootedTreeDecomposition& td, int w, int ell,
                                     double slab_width) {
    if (!g.unit_weights())
        throw std::invalid_argument("layered_tw_pipeline requires a unit-weight graph");
    auto tdrep = validate_td(g, td);
    if (!tdrep.pass) throw std::invalid_argument("layered_tw_pipeline: invalid tree decomposition");
    auto chk = check_projection(g, L);
    if (!chk.ok)
        throw std::invalid_argument("layering is not 1-Lipschitz on edge " +
                                    std::to_string(chk.offending_edge));
    // layer-bag intersections at most w
    for (int t = 0; t < td.num_nodes(); ++t) {
        std::vector<long> layers;
        for (int v : td.bags[t]) layers.push_back(static_cast<long>(std::llround(L[v])));
        std::sort(layers.begin(), layers.end());
        long run = 0;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            run = (i > 0 && layers[i] == layers[i - 1]) ? run + 1 : 1;
            if (run > w)
                throw std::runtime_error("layer cap violated at bag " + std::to_string(t) +
                                         ", layer " + std::to_string(layers[i]));
        }
    }

    double r = static_cast<double>(ell);
    double S = slab_width < 0.0 ? std::max(r, static_cast<double>(ell)) : slab_width;

    SlabOracle oracle = [&](const SlabProblem& sp) -> Cover {
        // restrict the decomposition to the expanded slab
        RootedTreeDecomposition sub;
        sub.root = td.root;
        sub.parent = td.parent;
        sub.bags.resize(td.num_nodes());
        std::vector<int> local(g.num_vertices(), -1);
        for (std::size_t i = 0; i < sp.to_parent.size(); ++i)
            local[sp.to_parent[i]] = static_cast<int>(i);
        for (int t = 0; t < td.num_nodes(); ++t)
            for (int v : td.bags[t])
                if (local[v] >= 0) sub.bags[t].push_back(local[v]);
        for (auto& b : sub.bags) std::sort(b.begin(), b.end());
        auto reduced = reduce_td(sub);
        ColoredPartition col = tw_pipeline(sp.graph, reduced, ell);
        return coloring_to_cover(sp.graph, col);
    };

    Cover cover = parity_combine(g, L, r, S, oracle, 2);
    cover.producer = "layered_tw_pipeline";
    ColoredPartition out = cover_to_coloring(g, cover);
    return out;
}

} // namespace wdc
