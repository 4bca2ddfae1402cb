#ifndef WDC_COVER_HPP
#define WDC_COVER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wdc/metric.hpp"

namespace wdc {

// Ordered families of vertex sets at a scale r. A valid cover has each family
// r-disjoint (pairwise set distance strictly greater than r), every set of
// weak diameter in G at most `bound`, and the union covering the target
// vertex set. Bounds are carried as data and always re-verified; pipelines
// are never trusted.
struct Cover {
    double scale = 0.0;
    double bound = 0.0;
    std::vector<std::vector<std::vector<int>>> families;
    std::string producer;

    std::size_t num_sets() const {
        std::size_t k = 0;
        for (const auto& f : families) k += f.size();
        return k;
    }
};

// Total colouring of the vertex set, certified so that every monochromatic
// component of G^ell has weak diameter in G^ell at most `bound`.
struct ColoredPartition {
    int ell = 1;
    double bound = 0.0;
    int num_colors = 0;
    std::vector<int> colors;   // vertex -> colour in [0, num_colors)
};

struct MultiplicityReport {
    double r = 0.0;
    int tau = 0;         // max number of sets intersecting any r-ball
    double sigma = 0.0;  // certified bound / r
    int witness_center = -1;
};

struct FamilyReport {
    bool disjoint = true;
    bool bounded = true;
    double min_cross_distance = std::numeric_limits<double>::infinity();
    std::pair<int, int> offending_pair{-1, -1};  // vertices of two sets too close
    int offending_set = -1;                      // set index violating the bound
    double observed_bound = 0.0;
    bool observed_infinite = false;
};

struct CoverReport {
    bool pass = false;
    bool coverage_ok = true;
    std::vector<int> uncovered;
    std::vector<FamilyReport> families;
    double observed_bound = 0.0;     // max weak diameter over all sets
    bool observed_infinite = false;
};

struct ColoringReport {
    bool pass = false;
    long num_components = 0;
    long observed_bound = 0;         // hop metric in G^ell
    bool observed_infinite = false;
    std::vector<int> offending_component;  // first component over the bound
};

// Independent recomputation of the cover invariants. `target` defaults to the
// whole vertex set. Failures are data, not exceptions.
CoverReport verify_cover(const WeightedGraph& g, const Cover& cover,
                         std::optional<std::vector<int>> target = std::nullopt,
                         Exec exec = Exec::parallel);

// Checks every monochromatic component of G^ell against the certified bound.
ColoringReport verify_coloring(const WeightedGraph& g, const ColoredPartition& c,
                               Exec exec = Exec::parallel);

// Cover at integer scale ell -> colouring of G^ell with one colour per
// family (first-containing family wins after first-wins trimming). The bound
// becomes floor(cover.bound). Requires a unit-weight graph. Throws when some
// vertex is covered by no set.
ColoredPartition cover_to_coloring(const WeightedGraph& g, const Cover& cover);

// Colouring of G^ell -> cover at scale ell whose families are the per-colour
// lists of monochromatic components; the bound becomes ell * coloring bound.
Cover coloring_to_cover(const WeightedGraph& g, const ColoredPartition& c,
                        Exec exec = Exec::parallel);

// Exact maximum over all ball centers of the number of cover sets meeting
// the r_query-ball.
MultiplicityReport r_multiplicity(const WeightedGraph& g, const Cover& cover, double r_query,
                                  Exec exec = Exec::parallel);

struct SparsePartition {
    Cover partition;
    double sigma = 0.0;
    int tau = 0;
};

// Disjointified partition (first-wins trimming) with measured (sigma, tau)
// at radius r. Throws when the cover misses a vertex of g.
SparsePartition sparse_partition(const WeightedGraph& g, const Cover& cover, double r,
                                 Exec exec = Exec::parallel);

// JSON serialization (deterministic byte output for fixed inputs)
std::string cover_to_json(const Cover& cover);
Cover cover_from_json(const std::string& text);
std::string coloring_to_json(const ColoredPartition& c);
ColoredPartition coloring_from_json(const std::string& text);
void write_cover_file(const std::string& path, const Cover& cover);
Cover read_cover_file(const std::string& path);

// Colour classes as vertex lists, in colour order.
std::vector<std::vector<int>> color_classes(const ColoredPartition& c);

} // namespace wdc

#endif
