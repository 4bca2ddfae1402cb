#ifndef WDC_ANNULUS_HPP
#define WDC_ANNULUS_HPP

#include <optional>
#include <string>

#include "wdc/cover.hpp"
#include "wdc/layer_combine.hpp"

namespace wdc {

// Distance-annuli cover of one connected component, rooted at `root`.
// C0 holds the even-offset annuli from k0 outward, C1 holds the inner ball
// plus the odd-offset annuli. The certified bound (5r+9q+9kappa)p is a
// promise conditional on the graph having no q-fat K_{2,p} minor; the
// verifier decides, and a genuine violation yields an extractable witness.
struct AnnulusDecomposition {
    int root = 0;
    double r = 0.0, q = 0.0, kappa = 0.0;
    int p = 2;
    long k0 = 0;
    double certificate = 0.0;
    std::vector<int> component;        // vertices of the root's component
    std::vector<double> dist;          // distance from root (full graph size)
    std::vector<int> c0, c1;           // the two cover sets
};

AnnulusDecomposition annulus_decompose(const WeightedGraph& g, int root, double r, double q,
                                       double kappa, int p);

// Cover over the whole graph: one decomposition per connected component
// (least-index roots), two families made of the r-components of the C0 and
// C1 sides. Throws when some edge weight exceeds kappa.
Cover annulus_cover(const WeightedGraph& g, double r, double q, double kappa, int p,
                    Exec exec = Exec::parallel);

// Branch sets plus connector paths claiming a q-fat H-minor. Connector paths
// run from a branch-set vertex to a branch-set vertex; the distance bullets
// are checked on their interior vertices.
struct FatMinorModel {
    int pattern_vertices = 0;
    std::vector<std::pair<int, int>> pattern_edges;
    std::vector<std::vector<int>> branch_sets;
    std::vector<std::vector<int>> connectors;  // aligned with pattern_edges
    double q = 0.0;
};

struct FatModelReport {
    bool pass = false;
    std::string failure;               // empty when passing
    std::pair<int, int> offending{-1, -1};
};

// Checks all four distance bullets and branch-set connectivity by exact
// distance recomputation.
FatModelReport verify_fat_model(const WeightedGraph& g, const FatMinorModel& model);

std::string fat_model_to_json(const FatMinorModel& m);
FatMinorModel fat_model_from_json(const std::string& text);

struct Violation {
    int x = -1, y = -1;     // violating pair inside one r-component
    double distance = 0.0;
    int side = 0;           // 0 or 1: which cover set
};

// Scans the r-components of both sides for a pair beyond the certificate,
// maximizing the distance (ties by least vertex index).
std::optional<Violation> find_violation(const WeightedGraph& g, const AnnulusDecomposition& dec,
                                        Exec exec = Exec::parallel);

// Rebuilds the proof construction around the violating pair: a q-fat
// K_{2,p} model with branch sets {A, B, Q_1..Q_p} and connectors to the
// inner and outer hubs. Throws when the pair is not a genuine violation.
FatMinorModel extract_fat_witness(const WeightedGraph& g, const AnnulusDecomposition& dec,
                                  const Violation& v);

// Plain minor model: branch sets plus internally disjoint connector paths.
struct MinorModel {
    int pattern_vertices = 0;
    std::vector<std::pair<int, int>> pattern_edges;
    std::vector<std::vector<int>> branch_sets;
    std::vector<std::vector<int>> connectors;
};

struct MinorModelReport {
    bool pass = false;
    std::string failure;
};

MinorModelReport verify_minor_model(const WeightedGraph& g, const MinorModel& model);

// Lifts a fat model living inside the distance band [s,t] from `root` to a
// minor model of the pattern plus a universal vertex (branch set = the inner
// ball). Requires q > 2(t-s).
MinorModel lift_witness_apex(const WeightedGraph& g, const FatMinorModel& inner, int root,
                             double s, double t);

// Cover with 4 families for graphs with no K_{3,p} minor: per-component BFS
// projection, parity-combined annulus covers on expanded slabs. Edge weights
// above 1 are split first. slab_width < 0 selects the default S = r.
Cover k3p_pipeline(const WeightedGraph& g, int p, double r, double slab_width = -1.0);

// k3p at p = 2*genus + 3 for graphs embeddable in Euler genus `genus`.
Cover genus_pipeline(const WeightedGraph& g, int genus, double r, double slab_width = -1.0);

// certified bound of the k3p pipeline at radius r
double k3p_certificate(int p, double r, double slab_width = -1.0);

} // namespace wdc

#endif
