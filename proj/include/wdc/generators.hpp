#ifndef WDC_GENERATORS_HPP
#define WDC_GENERATORS_HPP

#include <cstdint>
#include <functional>

#include "wdc/euclid.hpp"
#include "wdc/tree_decomposition.hpp"

namespace wdc {

// Lattice graph over the given dimensions, unit weights; with `diagonals`
// every Chebyshev-distance-1 pair is adjacent.
WeightedGraph gen_grid(const std::vector<int>& dims, bool diagonals = false);

// Unit-coordinate embedding of gen_grid (row-major), stretch C.
Embedding grid_embedding(const std::vector<int>& dims, double stretch);

// Row layering of a 2-d grid (layer = first coordinate).
std::vector<double> grid_row_layering(int rows, int cols);

// Column-pair tree decomposition of a 2-d grid: bag i = columns i and i+1,
// path-shaped; every layer-bag intersection has 2 vertices.
RootedTreeDecomposition grid_column_td(int rows, int cols);

// Connected random cactus: every edge lies on at most one cycle.
WeightedGraph gen_cactus(int n, std::uint64_t seed);

struct GraphWithTd {
    WeightedGraph graph;
    RootedTreeDecomposition td;
};

// Random partial k-tree (k-tree construction, then edge deletions) together
// with its natural width-k tree decomposition.
GraphWithTd gen_partial_ktree(int n, int k, std::uint64_t seed, double keep_fraction = 0.7);

// Random planar triangulation built by repeated in-face vertex insertion
// (small diameter, dense).
WeightedGraph gen_planar(int n, std::uint64_t seed);

// Grid triangulated by one random diagonal per unit face (planar, grid-like
// diameter).
WeightedGraph gen_planar_grid(int rows, int cols, std::uint64_t seed);

// Subdivides every edge |E(G)| times.
WeightedGraph gen_one_planar_stress(const WeightedGraph& g);

// Trees-plus-long-edges expansion: every vertex becomes a p-subdivided
// binary tree with one leaf per neighbour, every edge a path with k internal
// vertices between the matching leaves.
WeightedGraph gen_stretch(const WeightedGraph& g, int k, int p);

// Exact ball counts against a growth profile at the sampled radii.
struct GrowthReport {
    bool pass = true;
    double offending_radius = 0.0;
    int offending_center = -1;
    long observed = 0;
};

GrowthReport growth_check(const WeightedGraph& g, const std::function<double(double)>& profile,
                          const std::vector<double>& radii, int center_samples = -1);

} // namespace wdc

#endif
