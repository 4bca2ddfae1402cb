#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "wdc/metric.hpp"

using namespace wdc;

TEST_CASE("distances: identity, weighted path, disconnection") {
    GraphBuilder b1(1);
    auto g1 = std::move(b1).build();
    int src1[1] = {0};
    auto d1 = distances(g1, src1);
    CHECK(d1[0] == DistanceValue::of(0.0));

    GraphBuilder b2(3);
    b2.add_edge(0, 1, 1.5);
    b2.add_edge(1, 2, 2.0);
    auto g2 = std::move(b2).build();
    int src2[1] = {0};
    auto d2 = distances(g2, src2);
    CHECK(d2[2] == DistanceValue::of(3.5));

    GraphBuilder b3(2);
    auto g3 = std::move(b3).build();
    int src3[1] = {0};
    auto d3 = distances(g3, src3);
    CHECK(d3[0].finite);
    CHECK(!d3[1].finite);

    auto dempty = distances(g2, {});
    for (auto& dv : dempty) CHECK(!dv.finite);
}

TEST_CASE("distances match the all-pairs oracle on random graphs") {
    for (unsigned seed : {1u, 2u, 3u}) {
        auto g = oracle::random_graph(40, 3.0, seed, true);
        auto ap = oracle::all_pairs(g);
        for (int s = 0; s < g.num_vertices(); s += 7) {
            int src[1] = {s};
            auto d = distances(g, src);
            for (int v = 0; v < g.num_vertices(); ++v) {
                if (ap[s][v] == oracle::kInf)
                    CHECK(!d[v].finite);
                else
                    CHECK(d[v].value == doctest::Approx(ap[s][v]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("triangle inequality on sampled triples") {
    auto g = oracle::random_graph(60, 4.0, 11, true);
    auto ap = oracle::all_pairs(g);
    for (int x = 0; x < 60; x += 5)
        for (int y = 1; y < 60; y += 7)
            for (int z = 2; z < 60; z += 9) {
                if (ap[x][y] == oracle::kInf || ap[y][z] == oracle::kInf) continue;
                CHECK(ap[x][z] <= ap[x][y] + ap[y][z] + 1e-9);
            }
}

TEST_CASE("neighborhood basics") {
    auto p5 = oracle::path(5);
    int s[1] = {2};
    CHECK(neighborhood(p5, s, 0.0) == std::vector<int>{2});
    CHECK(neighborhood(p5, s, 1.0) == std::vector<int>{1, 2, 3});

    auto st = oracle::star(6);
    int c[1] = {0};
    CHECK(neighborhood(st, c, 1.0).size() == 7);
}

TEST_CASE("r_components on P5 and against the closure oracle") {
    auto p5 = oracle::path(5);
    CHECK(r_components(p5, {}, 1.0).classes.empty());

    std::vector<int> subset{0, 2, 4};
    auto one = r_components(p5, subset, 2.0);
    CHECK(one.classes == oracle::closure_components(p5, subset, 2.0));
    CHECK(one.classes.size() == 1);

    auto three = r_components(p5, subset, 1.0);
    CHECK(three.classes == oracle::closure_components(p5, subset, 1.0));
    CHECK(three.classes.size() == 3);
}

TEST_CASE("r_components refine as r shrinks; serial equals parallel") {
    for (unsigned seed : {5u, 6u}) {
        auto g = oracle::random_graph(80, 3.0, seed, true);
        std::vector<int> subset;
        for (int v = 0; v < 80; v += 2) subset.push_back(v);
        for (double r : {0.5, 1.0, 2.0, 4.0}) {
            auto par = r_components(g, subset, r, Exec::parallel);
            auto ser = r_components(g, subset, r, Exec::serial);
            CHECK(par.classes == ser.classes);
            CHECK(par.classes == oracle::closure_components(g, subset, r));
        }
        // refinement: each class at r sits inside one class at r' > r
        auto fine = r_components(g, subset, 1.0);
        auto coarse = r_components(g, subset, 3.0);
        for (const auto& cls : fine.classes) {
            int found = 0;
            for (const auto& big : coarse.classes)
                if (std::includes(big.begin(), big.end(), cls.begin(), cls.end())) ++found;
            CHECK(found == 1);
        }
    }
}

TEST_CASE("rs_components: s >= r matches r_components, projection splits") {
    auto g = oracle::random_graph(50, 3.0, 9, true);
    std::vector<int> subset;
    for (int v = 0; v < 50; v += 3) subset.push_back(v);
    int root = 0;
    int src[1] = {root};
    auto dv = distances(g, src);
    std::vector<double> f(g.num_vertices(), 0.0);
    for (int v = 0; v < g.num_vertices(); ++v) f[v] = dv[v].finite ? dv[v].value : 0.0;

    auto plain = r_components(g, subset, 2.0);
    auto rs = rs_components(g, subset, 2.0, 2.0, f);
    CHECK(plain.classes == rs.classes);

    // the two ends of a 4-path are 4-connected but not (4,3)-connected under
    // the distance-from-end projection
    auto p = oracle::path(5);
    std::vector<double> fp{0, 1, 2, 3, 4};
    std::vector<int> ends{0, 4};
    CHECK(r_components(p, ends, 4.0).classes.size() == 1);
    CHECK(rs_components(p, ends, 4.0, 3.0, fp).classes.size() == 2);

    std::vector<int> single{3};
    CHECK(rs_components(p, single, 1.0, 1.0, fp).classes.size() == 1);
}

TEST_CASE("weak diameter in powers") {
    auto p5 = oracle::path(5);
    std::vector<int> all{0, 1, 2, 3, 4};
    std::vector<int> one{3};
    CHECK(weak_diameter(p5, one, 1.0) == DistanceValue::of(0.0));
    CHECK(weak_diameter(p5, all, 1.0) == DistanceValue::of(4.0));
    CHECK(weak_diameter(p5, all, 2.0) == DistanceValue::of(2.0));
    CHECK(weak_diameter(p5, all, 2.0).value ==
          static_cast<double>(oracle::weak_diameter_hops(p5, all, 2.0)));
}

TEST_CASE("weak diameter matches the explicit power graph on random inputs") {
    for (unsigned seed : {21u, 22u, 23u}) {
        auto g = oracle::random_graph(35, 3.0, seed, seed % 2 == 0);
        std::vector<int> subset;
        for (int v = 0; v < 35; v += 2) subset.push_back(v);
        for (double ell : {1.0, 2.0, 3.0}) {
            auto ours = weak_diameter(g, subset, ell);
            long ref = oracle::weak_diameter_hops(g, subset, ell);
            if (ref < 0)
                CHECK(!ours.finite);
            else
                CHECK(ours == DistanceValue::of(static_cast<double>(ref)));
            auto ser = weak_diameter(g, subset, ell, Exec::serial);
            CHECK(ours == ser);
        }
    }
}

TEST_CASE("power distance scaling: dist_G <= ell * hops") {
    auto g = oracle::random_graph(40, 3.0, 31, true);
    auto ap = oracle::all_pairs(g);
    double ell = 2.0;
    for (int s = 0; s < 40; s += 5) {
        int src[1] = {s};
        auto hops = power_hop_distances(g, src, ell);
        for (int v = 0; v < 40; ++v)
            if (hops[v] >= 0) CHECK(ap[s][v] <= ell * hops[v] + 1e-9);
    }
}

TEST_CASE("weak_diameter_metric against the oracle") {
    for (unsigned seed : {41u, 42u}) {
        auto g = oracle::random_graph(45, 2.5, seed, true);
        auto ap = oracle::all_pairs(g);
        std::vector<int> subset;
        for (int v = 0; v < 45; v += 4) subset.push_back(v);
        double ref = 0.0;
        bool inf = false;
        for (int x : subset)
            for (int y : subset) {
                if (ap[x][y] == oracle::kInf) inf = true;
                else ref = std::max(ref, ap[x][y]);
            }
        auto got = weak_diameter_metric(g, subset);
        if (inf)
            CHECK(!got.finite);
        else
            CHECK(got.value == doctest::Approx(ref).epsilon(1e-12));
        CHECK(got == weak_diameter_metric(g, subset, Exec::serial));
    }
}

TEST_CASE("subdivide") {
    auto k3 = oracle::complete(3);
    auto same = subdivide(k3, 0);
    CHECK(same.num_vertices() == 3);
    CHECK(same.num_edges() == 3);

    auto c6 = subdivide(k3, 1);
    CHECK(c6.num_vertices() == 6);
    CHECK(c6.num_edges() == 6);
    // a 6-cycle: connected, every vertex of degree 2
    for (int v = 0; v < 6; ++v) CHECK(c6.degree(v) == 2);
    CHECK(connected_components(c6).size() == 1);

    // distances between original vertices scale by k+1
    auto g = oracle::random_graph(20, 3.0, 55);
    auto sub = subdivide(g, 2);
    auto ap = oracle::all_pairs(g);
    int src[1] = {0};
    auto d = distances(sub, src);
    for (int v = 0; v < 20; ++v) {
        if (ap[0][v] == oracle::kInf)
            CHECK(!d[v].finite);
        else
            CHECK(d[v].value == doctest::Approx(3.0 * ap[0][v]));
    }
}

TEST_CASE("split_heavy_edges preserves distances between original vertices") {
    GraphBuilder b(4);
    b.add_edge(0, 1, 2.5);
    b.add_edge(1, 2, 0.5);
    b.add_edge(2, 3, 3.0);
    auto g = std::move(b).build();
    auto s = split_heavy_edges(g, 1.0);
    CHECK(s.max_weight() <= 1.0 + 1e-12);
    auto ap = oracle::all_pairs(g);
    int src[1] = {0};
    auto d = distances(s, src);
    for (int v = 0; v < 4; ++v) CHECK(d[v].value == doctest::Approx(ap[0][v]));
}

TEST_CASE("dimacs round trip") {
    auto g = oracle::random_graph(25, 3.0, 77, true);
    std::ostringstream out;
    write_dimacs(out, g);
    std::istringstream in(out.str());
    auto h = read_dimacs(in);
    REQUIRE(h.num_vertices() == g.num_vertices());
    REQUIRE(h.num_edges() == g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        CHECK(h.edge_u(e) == g.edge_u(e));
        CHECK(h.edge_v(e) == g.edge_v(e));
        CHECK(h.edge_weight(e) == g.edge_weight(e));
    }
    std::ostringstream again;
    write_dimacs(again, h);
    CHECK(again.str() == out.str());
}

TEST_CASE("dimacs parse errors carry line numbers") {
    std::istringstream bad("p 3 1\ne 1 9\n");
    CHECK_THROWS_WITH_AS(read_dimacs(bad), doctest::Contains("line 2"), std::runtime_error);
    std::istringstream loop("p 3 1\ne 2 2\n");
    CHECK_THROWS_AS(read_dimacs(loop), std::runtime_error);
}
