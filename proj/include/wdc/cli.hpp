#ifndef WDC_CLI_HPP
#define WDC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wdc {

// One CLI invocation. Parameters are validated per command before any
// computation; exit codes: 0 ok, 1 verification failure, 2 input error.
struct RunSpec {
    std::string command;  // tw | layered-tw | k3p | genus | minor | embed |
                          // annulus | verify | gen

    std::string graph_path;
    std::string td_path;         // PACE file, or torso JSON for `minor`
    std::string layering_path;
    std::string embedding_path;
    std::string cover_path;      // input cover for `verify`

    std::vector<int> ells;
    std::vector<double> rs;
    double q = 1.0;
    double kappa = 1.0;
    int p = 2;
    int genus = 0;
    int width = -1;
    int dim = 2;
    double stretch = 2.0;
    double slab = -1.0;
    int root = 0;
    std::uint64_t seed = 1;
    bool no_verify = false;

    std::string out_cover;
    std::string out_csv;
    std::string out_witness;

    // generator options
    std::string gen_type;        // grid | cactus | ktree | planar | stretch | subdivide
    std::vector<int> gen_dims{10, 10};
    int gen_n = 100;
    int gen_k = 3;
    bool gen_diagonals = false;
    int stretch_k = 2, stretch_p = 2;
    std::string out_graph, out_td, out_layering, out_embedding;
};

int run(const RunSpec& spec, std::ostream& log);

} // namespace wdc

#endif
