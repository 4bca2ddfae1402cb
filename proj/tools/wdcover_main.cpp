#include <iostream>

#include <CLI11.hpp>

#include "wdc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"covers and colourings of weighted graphs with certified weak-diameter bounds"};
    app.require_subcommand(1);

    wdc::RunSpec spec;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph", spec.graph_path, "graph file (DIMACS-like edge list)");
        cmd->add_option("--td", spec.td_path, "tree decomposition (PACE) or torso json");
        cmd->add_option("--layering", spec.layering_path, "layering file");
        cmd->add_option("--embedding", spec.embedding_path, "embedding file");
        cmd->add_option("--cover", spec.cover_path, "cover json to verify");
        cmd->add_option("--ell", spec.ells, "power scales");
        cmd->add_option("--r", spec.rs, "cover radii");
        cmd->add_option("--q", spec.q, "fatness parameter");
        cmd->add_option("--kappa", spec.kappa, "edge weight cap");
        cmd->add_option("--p", spec.p, "pattern parameter p");
        cmd->add_option("--genus", spec.genus, "Euler genus");
        cmd->add_option("--width", spec.width, "decomposition width cap / layer cap");
        cmd->add_option("--dim", spec.dim, "embedding dimension");
        cmd->add_option("--stretch", spec.stretch, "embedding stretch C");
        cmd->add_option("--slab", spec.slab, "slab width override");
        cmd->add_option("--root", spec.root, "root bag index (0-based)");
        cmd->add_option("--seed", spec.seed, "random seed");
        cmd->add_option("--out-cover", spec.out_cover, "cover json output");
        cmd->add_option("--out-csv", spec.out_csv, "csv sweep report");
        cmd->add_option("--out-witness", spec.out_witness, "fat minor witness json output");
        cmd->add_flag("--no-verify", spec.no_verify, "skip verification (timing runs only)");
    };

    for (const char* name : {"tw", "layered-tw", "k3p", "genus", "minor", "embed", "annulus",
                             "verify"}) {
        auto* cmd = app.add_subcommand(name);
        add_common(cmd);
        cmd->callback([&spec, name] { spec.command = name; });
    }
    auto* gen = app.add_subcommand("gen", "instance generators");
    add_common(gen);
    gen->add_option("--type", spec.gen_type,
                    "grid | cactus | ktree | planar | stretch | subdivide")
        ->required();
    gen->add_option("--dims", spec.gen_dims, "grid dimensions");
    gen->add_option("--n", spec.gen_n, "vertex count");
    gen->add_option("--k", spec.gen_k, "k-tree parameter");
    gen->add_flag("--diagonals", spec.gen_diagonals, "grid with diagonals");
    gen->add_option("--stretch-k", spec.stretch_k, "stretch path length");
    gen->add_option("--stretch-p", spec.stretch_p, "stretch subdivision");
    gen->add_option("--out-graph", spec.out_graph, "graph output path");
    gen->add_option("--out-td", spec.out_td, "decomposition output path");
    gen->add_option("--out-layering", spec.out_layering, "layering output path");
    gen->add_option("--out-embedding", spec.out_embedding, "embedding output path");
    gen->callback([&spec] { spec.command = "gen"; });

    CLI11_PARSE(app, argc, argv);
    return wdc::run(spec, std::cout);
}
