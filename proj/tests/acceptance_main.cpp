// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in code; timing budgets are enforced.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wdc/annulus.hpp"
#include "wdc/euclid.hpp"
#include "wdc/generators.hpp"
#include "wdc/layer_combine.hpp"
#include "wdc/tree_glue.hpp"

using namespace wdc;
using clk = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

// plain BFS distances, used for the independent witness recheck
std::vector<int> bfs_dist(const WeightedGraph& g, const std::vector<int>& sources) {
    std::vector<int> d(g.num_vertices(), -1);
    std::vector<int> frontier;
    for (int s : sources)
        if (d[s] != 0) {
            d[s] = 0;
            frontier.push_back(s);
        }
    int lvl = 0;
    while (!frontier.empty()) {
        ++lvl;
        std::vector<int> next;
        for (int u : frontier)
            for (int v : g.adj(u))
                if (d[v] < 0) {
                    d[v] = lvl;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    return d;
}

// ---- criterion 1: treewidth pipeline on seeded partial 3-trees ----
Outcome criterion_tw() {
    Outcome oc;
    auto t0 = clk::now();
    int runs = 0;
    for (int i = 0; i < 200; ++i) {
        int n = 60 + (i * 7919) % 1441;  // up to 1500
        auto inst = gen_partial_ktree(n, 3, 1000 + i);
        for (int ell : {1, 2, 4}) {
            auto col = tw_pipeline(inst.graph, inst.td, ell, 3);
            ++runs;
            if (col.num_colors != 2) {
                oc.fail("non-2-colouring at seed " + std::to_string(i));
                return oc;
            }
            auto rep = verify_coloring(inst.graph, col);
            if (!rep.pass) {
                oc.fail("verification failed at seed " + std::to_string(i) + " ell " +
                        std::to_string(ell));
                return oc;
            }
        }
    }
    double secs = seconds_since(t0);
    oc.note(std::to_string(runs) + " runs in " + std::to_string(secs) + " s");
    if (secs >= 120.0) oc.fail("over the 2 minute budget");
    return oc;
}

// ---- criterion 2: dimension-1 scale independence on paths ----
Outcome criterion_paths() {
    Outcome oc;
    for (int ell : {1, 2}) {
        long previous = -1;
        for (int n : {100, 200, 400, 800, 1600, 3200}) {
            GraphBuilder b(n);
            for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
            auto g = std::move(b).build();
            RootedTreeDecomposition td;
            for (int i = 0; i + 1 < n; ++i) {
                td.bags.push_back({i, i + 1});
                td.parent.push_back(i == 0 ? -1 : i - 1);
            }
            td.root = 0;
            auto col = tw_pipeline(g, td, ell, 1);
            auto rep = verify_coloring(g, col);
            if (!rep.pass) {
                oc.fail("path n=" + std::to_string(n) + " failed verification");
                return oc;
            }
            if (previous >= 0 && rep.observed_bound != previous) {
                oc.fail("observed bound drifted at n=" + std::to_string(n) + " ell=" +
                        std::to_string(ell) + ": " + std::to_string(rep.observed_bound) +
                        " vs " + std::to_string(previous));
                return oc;
            }
            previous = rep.observed_bound;
        }
        oc.note("ell=" + std::to_string(ell) + " observed=" + std::to_string(previous));
    }

    // lower-bound sanity: any valid 1-family cover of P_n at r=1 keeps all
    // vertices in one set, exhaustively for n <= 64: every adjacent pair is
    // within r, so a 1-disjoint family cannot separate them
    for (int n = 2; n <= 64; ++n) {
        GraphBuilder b(n);
        for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
        auto g = std::move(b).build();
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        auto closure = r_components(g, all, 1.0);
        if (closure.classes.size() != 1 ||
            static_cast<int>(closure.classes[0].size()) != n) {
            oc.fail("merge closure split P_" + std::to_string(n));
            return oc;
        }
        // hence the single admissible set has weak diameter exactly n-1
        auto wd = weak_diameter_metric(g, closure.classes[0]);
        if (!wd.finite || wd.value < static_cast<double>(n - 1)) {
            oc.fail("lower bound check failed at n=" + std::to_string(n));
            return oc;
        }
    }
    oc.note("1-family lower bound n-1 exhaustive to n=64");
    return oc;
}

// ---- criterion 3: annulus covers on cacti ----
Outcome criterion_annulus_cacti() {
    Outcome oc;
    auto t0 = clk::now();
    int runs = 0;
    for (int i = 0; i < 100; ++i) {
        int n = 200 + (i * 6151) % 1801;  // up to 2000
        auto g = gen_cactus(n, 2000 + i);
        for (int r = 1; r <= 5; ++r) {
            auto cover = annulus_cover(g, r, r, 1.0, 3);
            ++runs;
            double expect = (5.0 * r + 9.0 * r + 9.0) * 3;
            if (std::abs(cover.bound - expect) > 1e-9) {
                oc.fail("certificate mismatch at r=" + std::to_string(r));
                return oc;
            }
            if (cover.families.size() != 2) {
                oc.fail("family count is not 2");
                return oc;
            }
            auto rep = verify_cover(g, cover);
            if (!rep.pass) {
                oc.fail("cover failed at seed " + std::to_string(i) + " r=" +
                        std::to_string(r));
                return oc;
            }
        }
    }
    double secs = seconds_since(t0);
    oc.note(std::to_string(runs) + " runs in " + std::to_string(secs) + " s");
    if (secs >= 60.0) oc.fail("over the 1 minute budget");
    return oc;
}

// ---- criterion 4: witness soundness on grids ----
Outcome criterion_witness() {
    Outcome oc;
    auto t0 = clk::now();
    int violations = 0, verified = 0;
    // plain-grid annuli at r=1 are independent sets, so the violating rings
    // come from the grids with diagonals
    for (int n : {40, 60}) {
        auto g = gen_grid({n, n}, true);
        auto dec = annulus_decompose(g, 0, 1.0, 1.0, 1.0, 2);
        for (int side = 0; side < 2; ++side) {
            const auto& set = side == 0 ? dec.c0 : dec.c1;
            auto parts = r_components(g, set, 1.0);
            for (const auto& comp : parts.classes) {
                if (comp.size() < 2) continue;
                auto wd = weak_diameter_metric(g, comp);
                if (!wd.finite || wd.value <= dec.certificate) continue;
                // locate a maximum pair
                Violation viol;
                viol.side = side;
                viol.distance = 0.0;
                for (int u : comp) {
                    int src[1] = {u};
                    auto d = distances(g, src);
                    for (int v : comp)
                        if (v > u && d[v].finite && d[v].value > viol.distance) {
                            viol.distance = d[v].value;
                            viol.x = u;
                            viol.y = v;
                        }
                }
                ++violations;
                auto model = extract_fat_witness(g, dec, viol);
                auto rep = verify_fat_model(g, model);
                if (!rep.pass) {
                    oc.fail("witness failed verification on " + std::to_string(n) + "x" +
                            std::to_string(n) + ": " + rep.failure);
                    return oc;
                }
                // independent recomputation of the four distance bullets
                auto setdist = [&](const std::vector<int>& a, const std::vector<int>& bset) {
                    auto d = bfs_dist(g, a);
                    int best = -1;
                    for (int y : bset)
                        if (d[y] >= 0 && (best < 0 || d[y] < best)) best = d[y];
                    return best;
                };
                bool bullets = true;
                for (std::size_t a = 0; a < model.branch_sets.size() && bullets; ++a)
                    for (std::size_t bb = a + 1; bb < model.branch_sets.size(); ++bb)
                        if (setdist(model.branch_sets[a], model.branch_sets[bb]) <
                            static_cast<int>(model.q))
                            bullets = false;
                std::vector<std::vector<int>> interiors;
                for (const auto& path : model.connectors)
                    interiors.emplace_back(path.begin() + 1, path.end() - 1);
                for (std::size_t e = 0; e < interiors.size() && bullets; ++e) {
                    if (interiors[e].empty()) continue;
                    auto [pa, pb] = model.pattern_edges[e];
                    for (int w = 0; w < model.pattern_vertices && bullets; ++w)
                        if (w != pa && w != pb &&
                            setdist(interiors[e], model.branch_sets[w]) <
                                static_cast<int>(model.q))
                            bullets = false;
                    for (std::size_t f = e + 1; f < interiors.size() && bullets; ++f)
                        if (!interiors[f].empty() &&
                            setdist(interiors[e], interiors[f]) < static_cast<int>(model.q))
                            bullets = false;
                }
                if (!bullets) {
                    oc.fail("independent bullet recheck failed");
                    return oc;
                }
                ++verified;
            }
        }
    }
    double secs = seconds_since(t0);
    if (violations == 0) {
        oc.fail("no violations observed, criterion vacuous");
        return oc;
    }
    oc.note(std::to_string(verified) + "/" + std::to_string(violations) +
            " witnesses verified in " + std::to_string(secs) + " s");
    if (secs >= 120.0) oc.fail("over the 2 minute budget");
    return oc;
}

// ---- criterion 5: k3p pipeline on planar instances ----
Outcome criterion_k3p() {
    Outcome oc;
    auto t0 = clk::now();
    int runs = 0;
    for (int i = 0; i < 50; ++i) {
        WeightedGraph g;
        int n;
        if (i % 2 == 0) {
            int side = 10 + (i * 131) % 61;  // up to 70x70 = 4900 vertices
            g = gen_planar_grid(side, side, 3000 + i);
            n = side * side;
        } else {
            n = 200 + (i * 977) % 4801;  // up to 5000
            g = gen_planar(n, 3000 + i);
        }
        for (double r : {1.0, 2.0, 4.0}) {
            auto cover = k3p_pipeline(g, 3, r);
            ++runs;
            if (cover.families.size() != 4) {
                oc.fail("family count " + std::to_string(cover.families.size()) +
                        " at n=" + std::to_string(n));
                return oc;
            }
            if (!std::isfinite(cover.bound)) {
                oc.fail("non-finite certificate");
                return oc;
            }
            auto rep = verify_cover(g, cover);
            if (!rep.pass) {
                oc.fail("verification failed at instance " + std::to_string(i) + " r=" +
                        std::to_string(r));
                return oc;
            }
        }
    }
    double secs = seconds_since(t0);
    oc.note(std::to_string(runs) +
            " runs (4 families; the 3-family combiner is not implemented) in " +
            std::to_string(secs) + " s");
    return oc;
}

// ---- criterion 6: Euclidean covers ----
Outcome criterion_euclid() {
    Outcome oc;
    auto t0 = clk::now();
    auto g = gen_grid({40, 40});
    auto emb = grid_embedding({40, 40}, 2.0);
    for (int ell : {1, 2}) {
        auto col = embed_color(g, emb, ell);
        if (col.num_colors != 3) {
            oc.fail("colour count is not 3");
            return oc;
        }
        auto rep = verify_coloring(g, col);
        if (!rep.pass) {
            oc.fail("grid embedding colouring failed at ell=" + std::to_string(ell));
            return oc;
        }
    }
    auto cover = make_lattice_cover(1, 1.0);
    for (int i = 0; i <= 100000; ++i) {
        double x = -50.0 + 100.0 * i / 100000.0;
        int cls = lattice_assign({x}, cover);
        if (cls < 0 || cls > 1) {
            oc.fail("totality sweep failed at x=" + std::to_string(x));
            return oc;
        }
    }
    double secs = seconds_since(t0);
    oc.note("3 colours at ell in {1,2}; 1e5-point sweep total in " + std::to_string(secs) +
            " s");
    if (secs >= 30.0) oc.fail("over the 30 second budget");
    return oc;
}

// ---- criterion 7: formula calculus ----
Outcome criterion_formulas() {
    Outcome oc;
    for (int x = 0; x <= 20; ++x)
        for (int y = 1; y <= 20; ++y) {
            if (std::abs(centered_bound(0, x, y) - y) > 1e-9) {
                oc.fail("f(0,x,y) != y");
                return oc;
            }
            for (int k = 1; k <= 10; ++k)
                if (std::abs(centered_bound(k, x, y) -
                             (2.0 * x + 2.0 + 2.0 * centered_bound(k - 1, x, y))) > 1e-6) {
                    oc.fail("recurrence failed at k=" + std::to_string(k));
                    return oc;
                }
        }

    // intrinsic transfer: the oracle is consulted at span S + 2r and its
    // bound becomes the certificate
    std::mt19937 rng(604);
    std::uniform_real_distribution<double> unif(0.5, 8.0);
    for (int trial = 0; trial < 50; ++trial) {
        double r = unif(rng);
        double S = unif(rng);
        GraphBuilder b(40);
        for (int i = 0; i + 1 < 40; ++i) b.add_edge(i, i + 1);
        auto g = std::move(b).build();
        auto L = bfs_layering(g, 0);
        auto bands = slabs(g, L, S);
        double seen_span = -1.0;
        SlabOracle probe = [&](const SlabProblem& sp) {
            seen_span = sp.span;
            Cover c;
            c.scale = sp.r;
            c.bound = 7.0 * sp.span;  // a symbolic D(r, span)
            c.families.resize(1);
            for (auto& comp : connected_components(sp.graph)) c.families[0].push_back(comp);
            return c;
        };
        auto mid = bands[bands.size() / 2];
        auto out = intrinsic_expand(g, L, mid, probe, r);
        if (std::abs(seen_span - (S + 2.0 * r)) > 1e-9) {
            oc.fail("oracle span was not S + 2r");
            return oc;
        }
        if (std::abs(out.bound - 7.0 * (S + 2.0 * r)) > 1e-9) {
            oc.fail("bound is not D(r, S + 2r)");
            return oc;
        }
    }

    // k0 estimates on random parameter triples
    std::uniform_real_distribution<double> pr(0.05, 25.0);
    for (int trial = 0; trial < 10000; ++trial) {
        double r = pr(rng), q = pr(rng), kappa = pr(rng);
        GraphBuilder b(2);
        b.add_edge(0, 1, std::min(kappa, 1.0));
        auto g = std::move(b).build();
        auto dec = annulus_decompose(g, 0, r, q, kappa, 2);
        double k0r = static_cast<double>(dec.k0) * r;
        if (k0r < r + 3.0 * q + 3.0 * kappa - 1e-6 ||
            k0r > 2.0 * r + 3.0 * q + 3.0 * kappa + 1e-6) {
            oc.fail("k0 estimate out of range");
            return oc;
        }
    }
    oc.note("recurrence to k=10, x,y<=20; 50 symbolic probes; 1e4 k0 triples");
    return oc;
}

// ---- criterion 8: conversion equivalence on pipeline outputs ----
Outcome criterion_conversions() {
    Outcome oc;
    struct Named {
        std::string name;
        WeightedGraph graph;
        Cover cover;
    };
    std::vector<Named> outputs;

    {
        auto inst = gen_partial_ktree(400, 3, 81);
        auto col = tw_pipeline(inst.graph, inst.td, 2);
        col.bound = static_cast<double>(verify_coloring(inst.graph, col).observed_bound);
        outputs.push_back({"tw", inst.graph, coloring_to_cover(inst.graph, col)});
    }
    {
        auto g = gen_cactus(800, 82);
        outputs.push_back({"annulus", g, annulus_cover(g, 2.0, 2.0, 1.0, 3)});
    }
    {
        auto g = gen_planar_grid(30, 30, 83);
        outputs.push_back({"k3p", g, k3p_pipeline(g, 3, 1.0)});
    }
    {
        auto g = gen_grid({40, 40});
        auto col = layered_tw_pipeline(g, grid_row_layering(40, 40), grid_column_td(40, 40),
                                       2, 1);
        outputs.push_back({"layered", g, coloring_to_cover(g, col)});
    }
    {
        auto g = gen_grid({30, 30});
        auto col = embed_color(g, grid_embedding({30, 30}, 2.0), 1);
        outputs.push_back({"embed", g, coloring_to_cover(g, col)});
    }

    for (auto& out : outputs) {
        auto rep0 = verify_cover(out.graph, out.cover);
        if (!rep0.pass) {
            oc.fail(out.name + ": source cover failed verification");
            return oc;
        }
        double scale = out.cover.scale;
        if (scale < 1.0 || std::floor(scale) != scale) {
            oc.fail(out.name + ": non-integer scale");
            return oc;
        }
        auto col = cover_to_coloring(out.graph, out.cover);
        if (std::abs(col.bound - std::floor(out.cover.bound)) > 1e-9) {
            oc.fail(out.name + ": colouring bound is not floor(cover bound)");
            return oc;
        }
        auto crep = verify_coloring(out.graph, col);
        if (!crep.pass) {
            oc.fail(out.name + ": converted colouring failed");
            return oc;
        }
        auto back = coloring_to_cover(out.graph, col);
        if (std::abs(back.bound - scale * col.bound) > 1e-9) {
            oc.fail(out.name + ": cover bound is not ell * colouring bound");
            return oc;
        }
        auto rep1 = verify_cover(out.graph, back);
        if (!rep1.pass) {
            oc.fail(out.name + ": roundtrip cover failed (coverage or disjointness)");
            return oc;
        }
        if (back.families.size() > out.cover.families.size()) {
            oc.fail(out.name + ": family count grew");
            return oc;
        }
        auto mult = r_multiplicity(out.graph, out.cover, scale / 2.0);
        if (mult.tau > static_cast<int>(out.cover.families.size())) {
            oc.fail(out.name + ": tau " + std::to_string(mult.tau) + " exceeds family count");
            return oc;
        }
    }
    oc.note(std::to_string(outputs.size()) + " pipeline outputs roundtripped");
    return oc;
}

// ---- criterion 9: layered treewidth on grids ----
Outcome criterion_layered() {
    Outcome oc;
    auto t0 = clk::now();
    for (int ell : {1, 2}) {
        long previous = -1;
        for (int n : {25, 50, 100, 200}) {
            auto g = gen_grid({n, n});
            auto col =
                layered_tw_pipeline(g, grid_row_layering(n, n), grid_column_td(n, n), 2, ell);
            if (col.num_colors != 4) {
                oc.fail("colour count is not 4");
                return oc;
            }
            auto rep = verify_coloring(g, col);
            if (!rep.pass) {
                oc.fail("grid " + std::to_string(n) + " failed at ell=" + std::to_string(ell));
                return oc;
            }
            if (previous >= 0 && rep.observed_bound != previous) {
                oc.fail("observed bound drifted at n=" + std::to_string(n) + ": " +
                        std::to_string(rep.observed_bound) + " vs " + std::to_string(previous));
                return oc;
            }
            previous = rep.observed_bound;
        }
        oc.note("ell=" + std::to_string(ell) + " observed=" + std::to_string(previous));
    }
    double secs = seconds_since(t0);
    oc.note("in " + std::to_string(secs) + " s");
    if (secs >= 180.0) oc.fail("over the 3 minute budget");
    return oc;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Outcome()> fn;
    };
    std::vector<Entry> criteria{
        {"1 treewidth pipeline (200 partial 3-trees, ell in {1,2,4})", criterion_tw},
        {"2 path scale-independence + 1-family lower bound", criterion_paths},
        {"3 annulus covers on cacti (100 seeds, r=q in 1..5)", criterion_annulus_cacti},
        {"4 witness soundness on grids (40, 60)", criterion_witness},
        {"5 k3p pipeline on planar instances (50 seeds, r in {1,2,4})", criterion_k3p},
        {"6 euclidean covers (grid embeddings, lattice sweep)", criterion_euclid},
        {"7 formula calculus (recurrence, intrinsic transfer, k0)", criterion_formulas},
        {"8 conversion equivalence on pipeline outputs", criterion_conversions},
        {"9 layered treewidth on grids (25..200 doubling)", criterion_layered},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto t0 = clk::now();
        Outcome oc;
        try {
            oc = c.fn();
        } catch (const std::exception& ex) {
            oc.pass = false;
            oc.detail = std::string("exception: ") + ex.what();
        }
        double secs = seconds_since(t0);
        std::printf("%s criterion %s (%.1f s)%s%s\n", oc.pass ? "PASS" : "FAIL", c.name, secs,
                    oc.detail.empty() ? "" : " -- ", oc.detail.c_str());
        std::fflush(stdout);
        if (!oc.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures;
}
