#ifndef WDC_TREE_DECOMPOSITION_HPP
#define WDC_TREE_DECOMPOSITION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "wdc/graph.hpp"

namespace wdc {

// Rooted tree decomposition: bags over a rooted tree. Nodes are dense
// indices; parent[root] = -1.
struct RootedTreeDecomposition {
    std::vector<int> parent;
    std::vector<std::vector<int>> bags;  // each sorted ascending
    int root = 0;

    int num_nodes() const { return static_cast<int>(bags.size()); }
    std::vector<std::vector<int>> children() const;
};

struct TdReport {
    bool pass = false;
    bool covers_vertices = true;
    bool covers_edges = true;
    bool subtrees_connected = true;
    int offending_vertex = -1;
    long offending_edge = -1;
    int width = -1;      // max bag size - 1
    int adhesion = 0;    // max over tree edges of |X_t ∩ X_parent|
};

TdReport validate_td(const WeightedGraph& g, const RootedTreeDecomposition& td);
int td_width(const RootedTreeDecomposition& td);
int td_adhesion(const RootedTreeDecomposition& td);

// Contracts tree edges whose bags are nested (one contained in the other)
// until adjacent bags are incomparable; for a width-w decomposition this
// forces adhesion <= w. Root membership is preserved.
RootedTreeDecomposition reduce_td(const RootedTreeDecomposition& td);

// Re-roots the underlying undirected bag tree at `new_root`.
RootedTreeDecomposition reroot(const RootedTreeDecomposition& td, int new_root);

// PACE-style text: "s td <#bags> <width+1> <n>" header, "b <id> <v...>" bag
// lines, then one "<i> <j>" line per bag-tree edge; everything 1-indexed.
// The root defaults to bag 1 unless overridden.
RootedTreeDecomposition read_pace(std::istream& in, int root = 0);
RootedTreeDecomposition read_pace_file(const std::string& path, int root = 0);
void write_pace(std::ostream& out, const RootedTreeDecomposition& td, int n_vertices);
void write_pace_file(const std::string& path, const RootedTreeDecomposition& td, int n_vertices);

// Rooted tree decomposition together with the side conditions that let the
// gluing recursion run: adhesion <= theta, bounded root bag, and every
// tree edge with adhesion above eta ending in a near-trivial leaf.
struct Construction {
    RootedTreeDecomposition td;
    int eta = 0;
    int theta = 0;
};

struct ConstructionReport {
    bool pass = false;
    TdReport td;
    bool adhesion_ok = true;
    bool root_bag_ok = true;
    bool root_nonempty_ok = true;
    bool big_adhesion_edges_ok = true;
    int offending_node = -1;  // child end of a violating tree edge
};

// Checks every structural bullet of the definition except bag-class
// membership, which is delegated to the oracle at colouring time.
ConstructionReport validate_construction(const WeightedGraph& g, const Construction& c);

// Wraps a decomposition of adhesion <= theta into a (theta,theta)-form by
// re-anchoring at a fresh root whose bag is one vertex drawn from the first
// nonempty bag. Throws when all bags are empty but the graph is not.
Construction normalize(const WeightedGraph& g, const RootedTreeDecomposition& td, int theta);

} // namespace wdc

#endif
