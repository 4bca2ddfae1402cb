#ifndef WDC_LAYER_COMBINE_HPP
#define WDC_LAYER_COMBINE_HPP

#include <functional>

#include "wdc/cover.hpp"
#include "wdc/layering.hpp"
#include "wdc/tree_decomposition.hpp"

namespace wdc {

// Oracle input: the induced subgraph of an expanded slab. The oracle must
// return a cover of the slab graph that verifies in the induced metric, with
// a fixed number of families and a bound depending only on (r, span).
struct SlabProblem {
    WeightedGraph graph;
    std::vector<int> to_parent;
    std::vector<double> proj;   // projection restricted to the slab, local ids
    double r = 0.0;
    double span = 0.0;          // projection width of the expanded slab
};

using SlabOracle = std::function<Cover(const SlabProblem&)>;

// Oracle cover for the expanded band [slab.lo - r, slab.hi + r), intersected
// with the slab core. Global r-components of the result stay inside the
// expanded band because the projection is 1-Lipschitz, so bounds and
// disjointness certified in the induced metric remain valid globally.
Cover intrinsic_expand(const WeightedGraph& g, const std::vector<double>& L, const Slab& slab,
                       const SlabOracle& oracle, double r);

// Families indexed by (slab parity, oracle colour): 2 * families_per_slab
// families, each r-disjoint globally since same-parity cores are separated by
// a projection gap above S >= r. Bound = max over slabs of the oracle bound.
Cover parity_combine(const WeightedGraph& g, const std::vector<double>& L, double r, double S,
                     const SlabOracle& oracle, int families_per_slab);

// 4-colouring of G^ell for a graph with a layering and a tree decomposition
// whose layer-bag intersections have size at most w. Slab subproblems run
// tw_pipeline on the expanded slab with the restricted decomposition.
// slab_width < 0 selects the default max(r, ell) = ell.
ColoredPartition layered_tw_pipeline(const WeightedGraph& g, const std::vector<double>& L,
                                     const RootedTreeDecomposition& td, int w, int ell,
                                     double slab_width = -1.0);

// certified bound for layered_tw_pipeline with layer cap w at scale ell
double layered_tw_certificate(int w, int ell, double slab_width = -1.0);

} // namespace wdc

#endif
