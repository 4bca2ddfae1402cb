#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wdc/centered.hpp"
#include "wdc/generators.hpp"
#include "wdc/layer_combine.hpp"

using namespace wdc;

TEST_CASE("centered_bound closed form and recurrence") {
    CHECK(centered_bound(2, 1.0, 3.0) == doctest::Approx(24.0));
    for (int x = 0; x <= 20; ++x)
        for (int y = 1; y <= 20; ++y) {
            CHECK(centered_bound(0, x, y) == doctest::Approx(static_cast<double>(y)));
            for (int k = 1; k <= 10; ++k)
                CHECK(centered_bound(k, x, y) ==
                      doctest::Approx(2.0 * x + 2.0 + 2.0 * centered_bound(k - 1, x, y)));
        }
    CHECK_THROWS_AS(centered_bound(1, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(centered_bound(1, 0.0, -2.0), std::invalid_argument);

    // monotone in every argument
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int k = static_cast<int>(rng() % 8);
        double x = static_cast<double>(rng() % 50) / 4.0;
        double y = 1.0 + static_cast<double>(rng() % 50) / 4.0;
        CHECK(centered_bound(k + 1, x, y) >= centered_bound(k, x, y));
        CHECK(centered_bound(k, x + 0.5, y) >= centered_bound(k, x, y));
        CHECK(centered_bound(k, x, y + 0.5) >= centered_bound(k, x, y));
    }
}

TEST_CASE("centered claims verify against neighbourhoods") {
    auto st = oracle::star(5);
    CenteredSetClaim claim;
    claim.z = {0, 1, 2, 3, 4, 5};
    claim.centers = {0};
    claim.k = 1;
    claim.r = 1.0;
    CHECK(check_centered_claim(st, claim).ok);

    auto p5 = oracle::path(5);
    CenteredSetClaim far;
    far.z = {0, 4};
    far.centers = {0};
    far.k = 1;
    far.r = 1.0;
    auto res = check_centered_claim(p5, far);
    CHECK(!res.ok);
    CHECK(res.uncovered_vertex == 4);

    CenteredSetClaim toomany;
    toomany.z = {0};
    toomany.centers = {0, 1};
    toomany.k = 1;
    toomany.r = 1.0;
    CHECK(check_centered_claim(p5, toomany).too_many_centers);
}

TEST_CASE("merge_centered: empty Z is the identity on the base") {
    auto p5 = oracle::path(5);
    std::vector<int> base{0, 1, 0, 1, 0};
    CenteredSetClaim claim;
    claim.k = 0;
    claim.r = 2.0;
    auto merged = merge_centered(p5, claim, base, 3.0, 2, {}, 1);
    CHECK(merged.colors == base);
    CHECK(merged.bound == doctest::Approx(3.0));
}

TEST_CASE("merge_centered on random stars carries the closed-form bound") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int leaves = 3 + static_cast<int>(rng() % 8);
        int tail = 2 + static_cast<int>(rng() % 6);
        // star plus a path hanging off one leaf
        GraphBuilder b(1 + leaves + tail);
        for (int i = 1; i <= leaves; ++i) b.add_edge(0, i);
        int prev = 1;
        for (int t = 0; t < tail; ++t) {
            b.add_edge(prev, 1 + leaves + t);
            prev = 1 + leaves + t;
        }
        auto g = std::move(b).build();

        // Z = centre and all leaves; base colours the tail by parity
        CenteredSetClaim claim;
        claim.k = 1;
        claim.r = 1.0;
        claim.centers = {0};
        for (int v = 0; v <= leaves; ++v) claim.z.push_back(v);
        std::vector<int> zc(claim.z.size());
        for (std::size_t i = 0; i < zc.size(); ++i) zc[i] = static_cast<int>(rng() % 2);
        std::vector<int> base(g.num_vertices(), -1);
        for (int t = 0; t < tail; ++t) base[1 + leaves + t] = t % 2;
        ColoredPartition tail_col;
        tail_col.ell = 1;
        tail_col.num_colors = 2;
        // measure the true bound of the base on G - Z
        std::vector<int> rest;
        for (int v = leaves + 1; v < g.num_vertices(); ++v) rest.push_back(v);
        auto sub = induce(g, rest);
        ColoredPartition sub_col;
        sub_col.ell = 1;
        sub_col.num_colors = 2;
        sub_col.colors.resize(sub.graph.num_vertices());
        for (int lv = 0; lv < sub.graph.num_vertices(); ++lv)
            sub_col.colors[lv] = base[sub.to_parent[lv]];
        auto base_rep = verify_coloring(sub.graph, sub_col);
        double n_base = static_cast<double>(base_rep.observed_bound);

        auto merged = merge_centered(g, claim, base, n_base, 2, zc, 1);
        CHECK(merged.bound ==
              doctest::Approx(centered_bound(1, 1.0, std::max(n_base, 1.0))));
        auto rep = verify_coloring(g, merged);
        CHECK(rep.pass);
    }
}

TEST_CASE("merge_centered rejects claims that fail verification") {
    auto p5 = oracle::path(5);
    CenteredSetClaim claim;
    claim.k = 1;
    claim.r = 1.0;
    claim.centers = {0};
    claim.z = {0, 1, 4};  // vertex 4 is too far
    std::vector<int> base(5, -1);
    base[2] = 0;
    base[3] = 0;
    CHECK_THROWS_WITH_AS(merge_centered(p5, claim, base, 1.0, 2, {0, 0, 0}, 1),
                         doctest::Contains("4"), std::runtime_error);
}

TEST_CASE("all_centered_bound certifies arbitrary colourings of centered graphs") {
    CHECK(all_centered_bound(0, 3.0) == doctest::Approx(1.0));
    CHECK(all_centered_bound(1, 1.0) == doctest::Approx(6.0));

    // any 2-colouring of a star has small observed weak diameter
    auto st = oracle::star(8);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        ColoredPartition col;
        col.ell = 1;
        col.num_colors = 2;
        col.bound = all_centered_bound(1, 1.0);
        col.colors.resize(st.num_vertices());
        for (auto& c : col.colors) c = static_cast<int>(rng() % 2);
        auto rep = verify_coloring(st, col);
        CHECK(rep.pass);
        CHECK(rep.observed_bound <= 2);
    }

    // complete graphs: observed diameter 1, certificate covers it
    auto k9 = oracle::complete(9);
    ColoredPartition col;
    col.ell = 1;
    col.num_colors = 2;
    col.bound = all_centered_bound(1, 1.0);
    col.colors.resize(9);
    for (int v = 0; v < 9; ++v) col.colors[v] = v % 2;
    auto rep = verify_coloring(k9, col);
    CHECK(rep.pass);
    CHECK(rep.observed_bound <= 1);
}

TEST_CASE("apex_color: empty apex set is the identity") {
    auto c8 = oracle::cycle(8);
    Pipeline parity = [](const WeightedGraph& g, const std::vector<int>&) {
        ColoredPartition col;
        col.ell = 1;
        col.num_colors = 2;
        col.bound = 0.0;
        col.colors.resize(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v) col.colors[v] = v % 2;
        return col;
    };
    auto col = apex_color(c8, {}, parity, 1);
    for (int v = 0; v < 8; ++v) CHECK(col.colors[v] == v % 2);
    CHECK(col.bound == doctest::Approx(0.0));
}

TEST_CASE("apex_color on a wheel verifies") {
    // cycle plus a hub adjacent to everything
    int n = 11;
    GraphBuilder b(n);
    for (int i = 1; i < n; ++i) {
        b.add_edge(i, i == n - 1 ? 1 : i + 1);
        b.add_edge(0, i);
    }
    auto wheel = std::move(b).build();
    Pipeline parity = [](const WeightedGraph& g, const std::vector<int>&) {
        ColoredPartition col;
        col.ell = 1;
        col.num_colors = 2;
        col.colors.resize(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v) col.colors[v] = v % 2;
        ColoredPartition probe = col;
        probe.bound = 1e9;
        col.bound = static_cast<double>(verify_coloring(g, probe).observed_bound);
        return col;
    };
    int hub[1] = {0};
    auto col = apex_color(wheel, hub, parity, 1);
    CHECK(col.colors[0] == 0);  // apexes take the first colour
    CHECK(verify_coloring(wheel, col).pass);
}

TEST_CASE("apex_color handles a grid plus a universal vertex") {
    // a universal vertex ruins any layering, but one apex deletion restores it
    auto grid = gen_grid({7, 7});
    GraphBuilder b(50);
    for (std::size_t e = 0; e < grid.num_edges(); ++e)
        b.add_edge(grid.edge_u(e), grid.edge_v(e));
    for (int v = 0; v < 49; ++v) b.add_edge(49, v);
    auto g = std::move(b).build();

    Pipeline base = [&](const WeightedGraph& wg, const std::vector<int>&) {
        return layered_tw_pipeline(wg, grid_row_layering(7, 7), grid_column_td(7, 7), 2, 1);
    };
    int apex[1] = {49};
    auto col = apex_color(g, apex, base, 1);
    CHECK(verify_coloring(g, col).pass);
}

TEST_CASE("vc_color certificates and failure paths") {
    GraphBuilder b0(4);
    auto edgeless = std::move(b0).build();
    auto col0 = vc_color(edgeless, {}, 0, 1);
    CHECK(verify_coloring(edgeless, col0).pass);

    // K_{2,m}: the two left vertices cover everything
    int m = 6;
    GraphBuilder b(2 + m);
    for (int i = 0; i < m; ++i) {
        b.add_edge(0, 2 + i);
        b.add_edge(1, 2 + i);
    }
    auto k2m = std::move(b).build();
    int cover_verts[2] = {0, 1};
    auto col = vc_color(k2m, cover_verts, 2, 1);
    CHECK(col.bound == doctest::Approx(centered_bound(2, 1.0, 1.0)));
    auto rep = verify_coloring(k2m, col);
    CHECK(rep.pass);
    CHECK(rep.observed_bound == 2);

    auto st = oracle::star(7);
    int centre[1] = {0};
    auto scol1 = vc_color(st, centre, 1, 1);
    auto srep1 = verify_coloring(st, scol1);
    CHECK(srep1.pass);
    CHECK(srep1.observed_bound <= 2);
    auto scol2 = vc_color(st, centre, 1, 2);
    auto srep2 = verify_coloring(st, scol2);
    CHECK(srep2.pass);
    CHECK(srep2.observed_bound == 1);

    // not a vertex cover: error names a violating edge
    auto p4 = oracle::path(4);
    int wrong[1] = {0};
    CHECK_THROWS_WITH_AS(vc_color(p4, wrong, 1, 1), doctest::Contains("edge"),
                         std::runtime_error);
}
