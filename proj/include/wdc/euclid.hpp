#ifndef WDC_EUCLID_HPP
#define WDC_EUCLID_HPP

#include <string>
#include <vector>

#include "wdc/cover.hpp"

namespace wdc {

// Vertex-to-point map with a unit-separation claim (pairwise distance >= 1)
// and a stretch claim (adjacent pairs <= C).
struct Embedding {
    int dim = 1;
    double stretch = 1.0;                     // C
    std::vector<std::vector<double>> points;  // one point per vertex
};

struct EmbeddingCheck {
    bool ok = true;
    bool separation_ok = true;
    bool stretch_ok = true;
    std::pair<int, int> offending{-1, -1};
};

EmbeddingCheck check_embedding(const WeightedGraph& g, const Embedding& emb,
                               Exec exec = Exec::parallel);

// Shifted-lattice cover of R^d: cells of side s(d+1) on d+1 lattices shifted
// by j*s along the all-ones direction; a point is deep in a cell when it
// keeps distance at least s/2 (non-strict) from every face. Every point is
// deep for at least one shift class, and same-class deep points of distinct
// cells are more than r apart whenever s > r.
struct LatticeCover {
    int dim = 1;
    double r = 1.0;
    double s = 2.0;       // shift step, default 2r
    double side() const { return s * (dim + 1); }
    double margin() const { return s / 2.0; }
};

LatticeCover make_lattice_cover(int dim, double r);

// least shift class whose cell holds the point deeply; 0..dim
int lattice_assign(const std::vector<double>& point, const LatticeCover& cover);

// d+1 colours from the lattice cover at scale r = ell * C. The certified
// bound comes from a volume packing argument: a monochromatic component of
// G^ell maps into one cell, so its size (hence hop diameter) is limited by
// how many unit-separated points fit there. Throws when a claim fails,
// naming the offending pair.
ColoredPartition embed_color(const WeightedGraph& g, const Embedding& emb, int ell,
                             Exec exec = Exec::parallel);

// max number of unit-separated points inside a cube of the given side
double unit_packing_bound(int dim, double side);

// Embedding file: lines "v <vertex> <x1> ... <xd>", 1-indexed.
Embedding read_embedding_file(const std::string& path, const WeightedGraph& g, int dim,
                              double stretch);
void write_embedding_file(const std::string& path, const Embedding& emb);

} // namespace wdc

#endif
