#ifndef WDC_LAYERING_HPP
#define WDC_LAYERING_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "wdc/metric.hpp"

namespace wdc {

// A real projection is a 1-Lipschitz vertex-to-real map; checking
// |f(u) - f(v)| <= weight(uv) on every edge suffices.
struct ProjectionCheck {
    bool ok = true;
    long offending_edge = -1;
};

ProjectionCheck check_projection(const WeightedGraph& g, const std::vector<double>& f,
                                 double eps = 1e-9);

// Distance from a root, per connected component. The component of `root`
// uses it; every other component is rooted at its least vertex.
std::vector<double> bfs_layering(const WeightedGraph& g, int root);

// Half-open band of the projection axis and its preimage.
struct Slab {
    double lo = 0.0, hi = 0.0;
    long index = 0;             // band index relative to the anchor
    std::vector<int> core;      // preimage of [lo, hi), sorted
};

// Bands of width S anchored at the minimum projection value plus `offset`;
// only nonempty bands are returned, in band order. Every vertex lies in
// exactly one core.
std::vector<Slab> slabs(const WeightedGraph& g, const std::vector<double>& L, double S,
                        double offset = 0.0);

// Integer layering file: lines "v <vertex> <layer>" (1-indexed vertices).
// Validated as a layering: edge endpoints within consecutive layers.
std::vector<double> read_layering_file(const std::string& path, const WeightedGraph& g);
void write_layering_file(const std::string& path, const std::vector<double>& L);

} // namespace wdc

#endif
