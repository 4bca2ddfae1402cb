#ifndef WDC_CENTERED_HPP
#define WDC_CENTERED_HPP

#include <functional>
#include <span>

#include "wdc/cover.hpp"

namespace wdc {

// Closed-form bound for merging a precoloured (k,r)-centered set into a
// colouring of the rest: f(k,x,y) = 2^k (y + 2x + 2) - 2x - 2.
// Satisfies f(0,x,y) = y and f(k,x,y) = 2x + 2 + 2 f(k-1,x,y).
// Throws when y <= 0.
double centered_bound(int k, double x, double y);

// Certificate for a graph whose whole vertex set is (k,r)-centered: any
// colouring of any power has weak diameter at most this value.
double all_centered_bound(int k, double r);

// Claim that z lies within distance r of at most k centers.
struct CenteredSetClaim {
    std::vector<int> z;
    std::vector<int> centers;
    int k = 0;
    double r = 0.0;
};

struct ClaimCheck {
    bool ok = true;
    int uncovered_vertex = -1;  // vertex of z outside the r-neighbourhood
    bool too_many_centers = false;
};

ClaimCheck check_centered_claim(const WeightedGraph& g, const CenteredSetClaim& claim);

// Union of an arbitrary colouring of Z with a colouring of G-Z.
// `base_colors` has one entry per vertex of g, -1 exactly on claim.z;
// `base_bound` is the certified weak diameter of the base in (G-Z)^ell.
// The result carries bound centered_bound(k, r, max(base_bound, 1)).
// Throws when the claim fails verification (citing the uncovered vertex).
ColoredPartition merge_centered(const WeightedGraph& g, const CenteredSetClaim& claim,
                                const std::vector<int>& base_colors, double base_bound,
                                int num_colors, const std::vector<int>& z_colors, int ell);

// Base pipeline contract: receives the induced subgraph together with the
// map from its local ids back to the caller's ids.
using Pipeline =
    std::function<ColoredPartition(const WeightedGraph&, const std::vector<int>& to_parent)>;

// Colours G by running `base` on G minus the apex set and giving every apex
// colour 0; certificate via (k,r) = (|apex|, 0).
ColoredPartition apex_color(const WeightedGraph& g, std::span<const int> apex,
                            const Pipeline& base, int ell);

// Constant colouring certified through a vertex cover s with |s| <= k: every
// non-singleton component of G^ell lies inside the ell-neighbourhood of s.
// Throws (citing a violating edge) when s is not a vertex cover.
ColoredPartition vc_color(const WeightedGraph& g, std::span<const int> s, int k, int ell);

} // namespace wdc

#endif
