#ifndef WDC_TREE_GLUE_HPP
#define WDC_TREE_GLUE_HPP

#include <functional>
#include <unordered_map>

#include "wdc/centered.hpp"
#include "wdc/cover.hpp"
#include "wdc/tree_decomposition.hpp"

namespace wdc {

// Constant calculus for the precolouring-extension recursion. `n` is the
// niceness bound promised by the bag oracle; f1 instantiates the centered
// merge at (k, r) = (theta, 3 ell).
struct FStarParams {
    int ell = 1;
    double n = 1.0;
    int m = 2;
    int theta = 1;
    double n_fplus = 0.0;
    double n_theta = 0.0;
    double n_theta_prime = 0.0;

    static FStarParams make(int ell, double n, int m, int theta);
    double f1(double x) const;
};

// f*(0) = n_fplus + n_theta_prime + n_theta + f1(n);
// f*(x) = max{(14 theta + 4) ell + 7 theta ell^2 f1(f*(x-1)), f*(0)}
double fstar(const FStarParams& p, int eta);

// A bag subproblem handed to the oracle: an induced working subgraph whose
// `core` is the underlying bag. Non-core vertices are pairwise non-adjacent
// with neighbourhoods inside the core (adhesion gadgets), except for at most
// one extra vertex on leaf bags. `parent_vertex` maps local ids back to the
// original input graph, -1 for synthetic gadget vertices. The oracle must
// return a colouring at the same power scale whose certified bound is at most
// the promised niceness bound, and must accept induced subgraphs of such
// closures (the bag classes are hereditary).
struct BagSubproblem {
    const WeightedGraph& graph;
    std::vector<int> core;
    std::vector<int> parent_vertex;
    int ell = 1;
};

using BagOracle = std::function<ColoredPartition(const BagSubproblem&)>;

struct ExtendOptions {
    // verify oracle colourings outright on subproblems up to this many
    // vertices (errors name the bag); -1 disables, 0 checks declared bounds
    // only
    int spot_verify_limit = 64;
    bool check_measure = true;  // assert the recursion measure decreases
};

// Extends the precolouring c_z on z (z inside the 3*ell-neighbourhood of the
// root bag) to a full m-colouring of G^ell with certified bound
// fstar(params, c.eta). Requires unit edge weights and m >= 2. The output
// agrees with c_z on z exactly.
ColoredPartition extend_coloring(const WeightedGraph& g, const Construction& c,
                                 std::span<const int> z, std::span<const int> z_colors,
                                 int ell, int m, const BagOracle& oracle,
                                 const FStarParams& params, const ExtendOptions& opts = {});

// 2-colouring of G^ell for a graph given with a tree decomposition of width
// at most w: bags act as vertex covers of their closures. `width_cap`, when
// nonnegative, rejects wider decompositions.
ColoredPartition tw_pipeline(const WeightedGraph& g, const RootedTreeDecomposition& td, int ell,
                             int width_cap = -1, const ExtendOptions& opts = {});

// certified bound emitted by tw_pipeline for width-w inputs at scale ell
double tw_certificate(int w, int ell);

// Per-bag certificate for the minor pipeline: an apex set of size at most p
// plus a layering and tree decomposition of the torso minus the apexes with
// every layer-bag intersection of size at most w.
struct TorsoData {
    std::vector<int> apex;
    std::unordered_map<int, int> layer_of;  // original vertex -> layer index
    RootedTreeDecomposition td;             // bags in original vertex ids
};

struct MinorDecomposition {
    RootedTreeDecomposition td;
    std::vector<TorsoData> torsos;  // one per td node
};

MinorDecomposition read_minor_decomposition_file(const std::string& path);
void write_minor_decomposition_file(const std::string& path, const MinorDecomposition& dec);

// 4-colouring of G^ell from a tree decomposition of adhesion at most p whose
// torsos carry apex + layered-treewidth certificates (layer cap w).
ColoredPartition minor_pipeline(const WeightedGraph& g, const MinorDecomposition& dec, int p,
                                int w, int ell, const ExtendOptions& opts = {});

} // namespace wdc

#endif
