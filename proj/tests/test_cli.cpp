#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wdc/annulus.hpp"
#include "wdc/cli.hpp"
#include "wdc/cover.hpp"
#include "wdc/generators.hpp"
#include "wdc/tree_glue.hpp"

using namespace wdc;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli: generate a ktree, run tw across scales, verify outputs") {
    TempFile graph("cli_ktree.graph"), td("cli_ktree.td"), cover("cli_ktree.cover"),
        csv("cli_ktree.csv");
    RunSpec gen;
    gen.command = "gen";
    gen.gen_type = "ktree";
    gen.gen_n = 80;
    gen.gen_k = 3;
    gen.seed = 11;
    gen.out_graph = graph.path;
    gen.out_td = td.path;
    std::ostringstream log;
    REQUIRE(run(gen, log) == 0);

    RunSpec tw;
    tw.command = "tw";
    tw.graph_path = graph.path;
    tw.td_path = td.path;
    tw.ells = {1, 2};
    tw.out_cover = cover.path;
    tw.out_csv = csv.path;
    REQUIRE(run(tw, log) == 0);

    // csv: header plus one row per scale
    auto lines = slurp(csv.path);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 3);
    CHECK(lines.rfind("scale,families,certified_bound,observed_bound,tau,wall_ms", 0) == 0);

    // written covers re-verify when read back
    auto g = read_dimacs_file(graph.path);
    for (const char* suffix : {"cli_ktree.0.cover", "cli_ktree.1.cover"}) {
        auto c = read_cover_file(suffix);
        CHECK(verify_cover(g, c).pass);
        std::remove(suffix);
    }
}

TEST_CASE("cli: verify accepts a hand-written valid cover") {
    TempFile graph("cli_p4.graph"), cover("cli_p4.cover");
    {
        std::ofstream out(graph.path);
        out << "p 4 3\ne 1 2\ne 2 3\ne 3 4\n";
    }
    {
        std::ofstream out(cover.path);
        out << R"({"scale":1.0,"bound":1.0,"families":[[[0,1]],[[2,3]]],"producer":"hand"})";
    }
    RunSpec spec;
    spec.command = "verify";
    spec.graph_path = graph.path;
    spec.cover_path = cover.path;
    std::ostringstream log;
    CHECK(run(spec, log) == 0);

    // an invalid cover exits with 1
    {
        std::ofstream out(cover.path);
        out << R"({"scale":1.0,"bound":1.0,"families":[[[0,1],[2,3]]],"producer":"hand"})";
    }
    CHECK(run(spec, log) == 1);
}

TEST_CASE("cli: input errors exit with 2") {
    RunSpec spec;
    spec.command = "tw";
    spec.graph_path = "does_not_exist.graph";
    spec.td_path = "nope.td";
    std::ostringstream log;
    CHECK(run(spec, log) == 2);

    TempFile bad("cli_bad.graph");
    {
        std::ofstream out(bad.path);
        out << "p 3 1\ne 1 9\n";
    }
    RunSpec spec2;
    spec2.command = "tw";
    spec2.graph_path = bad.path;
    spec2.td_path = "nope.td";
    CHECK(run(spec2, log) == 2);
    CHECK(log.str().find("line 2") != std::string::npos);
}

TEST_CASE("cli: annulus promise violation emits a verifying witness") {
    TempFile graph("cli_king.graph"), witness("cli_king.witness"), csv("cli_king.csv");
    write_dimacs_file(graph.path, gen_grid({52, 52}, true));

    RunSpec spec;
    spec.command = "annulus";
    spec.graph_path = graph.path;
    spec.rs = {1.0};
    spec.q = 1.0;
    spec.kappa = 1.0;
    spec.p = 2;
    spec.out_witness = witness.path;
    spec.out_csv = csv.path;
    std::ostringstream log;
    CHECK(run(spec, log) == 1);
    CHECK(log.str().find("promise violation") != std::string::npos);

    auto g = read_dimacs_file(graph.path);
    auto model = fat_model_from_json(slurp(witness.path));
    CHECK(verify_fat_model(g, model).pass);
}

TEST_CASE("cli: k3p on a cactus and byte-identical reruns") {
    TempFile graph("cli_cactus.graph"), cover("cli_cactus.cover");
    RunSpec gen;
    gen.command = "gen";
    gen.gen_type = "cactus";
    gen.gen_n = 120;
    gen.seed = 4;
    gen.out_graph = graph.path;
    std::ostringstream log;
    REQUIRE(run(gen, log) == 0);

    RunSpec k3p;
    k3p.command = "k3p";
    k3p.graph_path = graph.path;
    k3p.p = 3;
    k3p.rs = {2.0};
    k3p.out_cover = cover.path;
    REQUIRE(run(k3p, log) == 0);
    auto first = slurp(cover.path);
    REQUIRE(run(k3p, log) == 0);
    CHECK(slurp(cover.path) == first);
}

TEST_CASE("cli: minor command consumes a torso json") {
    TempFile graph("cli_minor.graph"), dec_file("cli_minor.json");
    auto g = gen_grid({6, 6});
    write_dimacs_file(graph.path, g);
    MinorDecomposition dec;
    std::vector<int> all(36);
    for (int i = 0; i < 36; ++i) all[i] = i;
    dec.td.bags = {all};
    dec.td.parent = {-1};
    dec.td.root = 0;
    TorsoData torso;
    auto L = grid_row_layering(6, 6);
    for (int v = 0; v < 36; ++v) torso.layer_of[v] = static_cast<int>(L[v]);
    torso.td = grid_column_td(6, 6);
    dec.torsos.push_back(std::move(torso));
    write_minor_decomposition_file(dec_file.path, dec);

    RunSpec spec;
    spec.command = "minor";
    spec.graph_path = graph.path;
    spec.td_path = dec_file.path;
    spec.p = 1;
    spec.width = 2;
    spec.ells = {1};
    std::ostringstream log;
    CHECK(run(spec, log) == 0);
}

TEST_CASE("cli: grid generation writes layering, decomposition, embedding") {
    TempFile graph("cli_grid.graph"), td("cli_grid.td"), lay("cli_grid.lay"),
        emb("cli_grid.emb"), csv("cli_grid.csv");
    RunSpec gen;
    gen.command = "gen";
    gen.gen_type = "grid";
    gen.gen_dims = {8, 8};
    gen.out_graph = graph.path;
    gen.out_td = td.path;
    gen.out_layering = lay.path;
    gen.out_embedding = emb.path;
    std::ostringstream log;
    REQUIRE(run(gen, log) == 0);

    RunSpec lt;
    lt.command = "layered-tw";
    lt.graph_path = graph.path;
    lt.td_path = td.path;
    lt.layering_path = lay.path;
    lt.width = 2;
    lt.ells = {1};
    lt.out_csv = csv.path;
    CHECK(run(lt, log) == 0);

    RunSpec em;
    em.command = "embed";
    em.graph_path = graph.path;
    em.embedding_path = emb.path;
    em.dim = 2;
    em.stretch = 2.0;
    em.ells = {1};
    CHECK(run(em, log) == 0);
}
