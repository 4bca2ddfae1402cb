#include "wdc/cover.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wdc {

namespace {

constexpr double kEps = 1e-9;

void check_vertices(const WeightedGraph& g, const Cover& cover) {
    for (const auto& fam : cover.families)
        for (const auto& set : fam)
            for (int v : set)
                if (v < 0 || v >= g.num_vertices())
                    throw std::invalid_argument("cover references vertex out of range");
}

} // namespace

CoverReport verify_cover(const WeightedGraph& g, const Cover& cover,
                         std::optional<std::vector<int>> target, Exec exec) {
    check_vertices(g, cover);
    CoverReport rep;

    // coverage
    std::vector<char> covered(g.num_vertices(), 0);
    for (const auto& fam : cover.families)
        for (const auto& set : fam)
            for (int v : set) covered[v] = 1;
    if (target) {
        for (int v : *target)
            if (!covered[v]) rep.uncovered.push_back(v);
    } else {
        for (int v = 0; v < g.num_vertices(); ++v)
            if (!covered[v]) rep.uncovered.push_back(v);
    }
    rep.coverage_ok = rep.uncovered.empty();

    rep.families.resize(cover.families.size());
    for (std::size_t fi = 0; fi < cover.families.size(); ++fi) {
        const auto& fam = cover.families[fi];
        FamilyReport& fr = rep.families[fi];

        // r-disjointness: no vertex of another set within scale of this set
        std::vector<int> owner(g.num_vertices(), -1);
        bool overlap_fail = false;
        for (std::size_t si = 0; si < fam.size() && !overlap_fail; ++si)
            for (int v : fam[si]) {
                if (owner[v] >= 0 && owner[v] != static_cast<int>(si)) {
                    fr.disjoint = false;
                    fr.min_cross_distance = 0.0;
                    fr.offending_pair = {v, v};
                    overlap_fail = true;
                    break;
                }
                owner[v] = static_cast<int>(si);
            }

        if (!overlap_fail) {
            double min_cross = std::numeric_limits<double>::infinity();
            std::pair<int, int> cross_pair{-1, -1};
            auto scan_set = [&](std::size_t si, DijkstraWorkspace& ws, double& best,
                                std::pair<int, int>& pair_out) {
                ws.run(g, fam[si], cover.scale, [&](int v, double d) {
                    if (owner[v] >= 0 && owner[v] != static_cast<int>(si)) {
                        if (d < best) {
                            best = d;
                            // report (member of si closest is unknown here; v suffices
                            // with one witness from si)
                            pair_out = {fam[si].empty() ? -1 : fam[si][0], v};
                        }
                    }
                });
            };
            if (exec == Exec::serial) {
                DijkstraWorkspace ws;
                for (std::size_t si = 0; si < fam.size(); ++si)
                    scan_set(si, ws, min_cross, cross_pair);
            } else {
#ifdef _OPENMP
#pragma omp parallel
                {
                    DijkstraWorkspace ws;
                    double best = std::numeric_limits<double>::infinity();
                    std::pair<int, int> pr{-1, -1};
#pragma omp for schedule(dynamic, 8)
                    for (long si = 0; si < static_cast<long>(fam.size()); ++si)
                        scan_set(static_cast<std::size_t>(si), ws, best, pr);
#pragma omp critical
                    if (best < min_cross) {
                        min_cross = best;
                        cross_pair = pr;
                    }
                }
#else
                DijkstraWorkspace ws;
                for (std::size_t si = 0; si < fam.size(); ++si)
                    scan_set(si, ws, min_cross, cross_pair);
#endif
            }
            fr.min_cross_distance = min_cross;
            if (min_cross <= cover.scale) {
                fr.disjoint = false;
                fr.offending_pair = cross_pair;
            }
        }

        // boundedness: weak diameter in G of every set; wide families fan out
        // across sets, otherwise the per-set search parallelizes internally
        std::vector<double> wd_of(fam.size(), 0.0);
        std::vector<char> inf_of(fam.size(), 0);
        bool fan_out = exec == Exec::parallel && fam.size() >= 8;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (fan_out)
#endif
        for (long si = 0; si < static_cast<long>(fam.size()); ++si) {
            DistanceValue wd =
                weak_diameter_metric(g, fam[si], fan_out ? Exec::serial : exec);
            if (!wd.finite)
                inf_of[si] = 1;
            else
                wd_of[si] = wd.value;
        }
        double fam_observed = 0.0;
        bool fam_infinite = false;
        for (std::size_t si = 0; si < fam.size(); ++si) {
            if (inf_of[si]) {
                fam_infinite = true;
                fr.bounded = false;
                if (fr.offending_set < 0) fr.offending_set = static_cast<int>(si);
                continue;
            }
            fam_observed = std::max(fam_observed, wd_of[si]);
            if (wd_of[si] > cover.bound + kEps) {
                fr.bounded = false;
                if (fr.offending_set < 0) fr.offending_set = static_cast<int>(si);
            }
        }
        fr.observed_bound = fam_observed;
        fr.observed_infinite = fam_infinite;
        rep.observed_bound = std::max(rep.observed_bound, fam_observed);
        rep.observed_infinite = rep.observed_infinite || fam_infinite;
    }

    rep.pass = rep.coverage_ok;
    for (const auto& fr : rep.families) rep.pass = rep.pass && fr.disjoint && fr.bounded;
    return rep;
}

std::vector<std::vector<int>> color_classes(const ColoredPartition& c) {
    std::vector<std::vector<int>> classes(c.num_colors);
    for (std::size_t v = 0; v < c.colors.size(); ++v) {
        int col = c.colors[v];
        if (col < 0 || col >= c.num_colors)
            throw std::invalid_argument("colouring is not total over [num_colors]");
        classes[col].push_back(static_cast<int>(v));
    }
    return classes;
}

ColoringReport verify_coloring(const WeightedGraph& g, const ColoredPartition& c, Exec exec) {
    if (static_cast<int>(c.colors.size()) != g.num_vertices())
        throw std::invalid_argument("colouring size mismatch");
    ColoringReport rep;
    std::vector<std::vector<int>> comps;
    for (const auto& cls : color_classes(c)) {
        if (cls.empty()) continue;
        auto part = r_components(g, cls, static_cast<double>(c.ell), exec);
        for (auto& comp : part.classes) comps.push_back(std::move(comp));
    }
    rep.num_components = static_cast<long>(comps.size());

    std::vector<long> wd_of(comps.size(), 0);
    bool fan_out = exec == Exec::parallel && comps.size() >= 8;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (fan_out)
#endif
    for (long i = 0; i < static_cast<long>(comps.size()); ++i) {
        DistanceValue wd = weak_diameter(g, comps[i], static_cast<double>(c.ell),
                                         fan_out ? Exec::serial : exec);
        wd_of[i] = wd.finite ? static_cast<long>(wd.value) : -1;
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (wd_of[i] < 0) {
            rep.observed_infinite = true;
            if (rep.offending_component.empty()) rep.offending_component = comps[i];
            continue;
        }
        rep.observed_bound = std::max(rep.observed_bound, wd_of[i]);
        if (static_cast<double>(wd_of[i]) > c.bound + kEps && rep.offending_component.empty())
            rep.offending_component = comps[i];
    }
    rep.pass = !rep.observed_infinite && rep.offending_component.empty() &&
               static_cast<double>(rep.observed_bound) <= c.bound + kEps;
    return rep;
}

ColoredPartition cover_to_coloring(const WeightedGraph& g, const Cover& cover) {
    check_vertices(g, cover);
    if (!g.unit_weights())
        throw std::invalid_argument("cover_to_coloring requires a unit-weight graph");
    double ell_real = cover.scale;
    if (ell_real < 1.0 || std::floor(ell_real) != ell_real)
        throw std::invalid_argument("cover_to_coloring requires an integer scale >= 1");
    ColoredPartition c;
    c.ell = static_cast<int>(ell_real);
    c.num_colors = static_cast<int>(cover.families.size());
    c.bound = std::floor(cover.bound);
    c.colors.assign(g.num_vertices(), -1);
    for (std::size_t fi = 0; fi < cover.families.size(); ++fi)
        for (const auto& set : cover.families[fi])
            for (int v : set)
                if (c.colors[v] < 0) c.colors[v] = static_cast<int>(fi);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (c.colors[v] < 0)
            throw std::runtime_error("vertex " + std::to_string(v) + " covered by no set");
    return c;
}

Cover coloring_to_cover(const WeightedGraph& g, const ColoredPartition& c, Exec exec) {
    if (static_cast<int>(c.colors.size()) != g.num_vertices())
        throw std::invalid_argument("colouring size mismatch");
    Cover cov;
    cov.scale = static_cast<double>(c.ell);
    cov.bound = static_cast<double>(c.ell) * c.bound;
    cov.producer = "coloring_to_cover";
    for (const auto& cls : color_classes(c)) {
        auto part = r_components(g, cls, static_cast<double>(c.ell), exec);
        cov.families.push_back(std::move(part.classes));
    }
    return cov;
}

MultiplicityReport r_multiplicity(const WeightedGraph& g, const Cover& cover, double r_query,
                                  Exec exec) {
    if (r_query < 0.0) throw std::invalid_argument("r_multiplicity: radius must be nonnegative");
    check_vertices(g, cover);
    MultiplicityReport rep;
    rep.r = r_query;
    rep.sigma = r_query > 0.0 ? cover.bound / r_query
                              : (cover.bound == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    if (g.num_vertices() == 0) return rep;

    // vertex -> global set ids containing it
    std::vector<std::vector<int>> sets_at(g.num_vertices());
    int set_id = 0;
    for (const auto& fam : cover.families)
        for (const auto& set : fam) {
            for (int v : set) sets_at[v].push_back(set_id);
            ++set_id;
        }

    std::vector<int> count(g.num_vertices(), 0);
    auto count_center = [&](int center, DijkstraWorkspace& ws, std::vector<int>& stamp,
                            int& version) {
        ++version;
        int distinct = 0;
        int src[1] = {center};
        ws.run(g, src, r_query, [&](int v, double) {
            for (int sid : sets_at[v])
                if (stamp[sid] != version) {
                    stamp[sid] = version;
                    ++distinct;
                }
        });
        count[center] = distinct;
    };

    if (exec == Exec::serial) {
        DijkstraWorkspace ws;
        std::vector<int> stamp(set_id, -1);
        int version = 0;
        for (int v = 0; v < g.num_vertices(); ++v) count_center(v, ws, stamp, version);
    } else {
#ifdef _OPENMP
#pragma omp parallel
        {
            DijkstraWorkspace ws;
            std::vector<int> stamp(set_id, -1);
            int version = 0;
#pragma omp for schedule(dynamic, 64)
            for (int v = 0; v < g.num_vertices(); ++v) count_center(v, ws, stamp, version);
        }
#else
        DijkstraWorkspace ws;
        std::vector<int> stamp(set_id, -1);
        int version = 0;
        for (int v = 0; v < g.num_vertices(); ++v) count_center(v, ws, stamp, version);
#endif
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (count[v] > rep.tau) {
            rep.tau = count[v];
            rep.witness_center = v;
        }
    return rep;
}

SparsePartition sparse_partition(const WeightedGraph& g, const Cover& cover, double r,
                                 Exec exec) {
    check_vertices(g, cover);
    SparsePartition out;
    out.partition.scale = cover.scale;
    out.partition.bound = cover.bound;
    out.partition.producer = cover.producer.empty() ? "sparse_partition"
                                                    : cover.producer + "+sparse_partition";
    std::vector<char> taken(g.num_vertices(), 0);
    for (const auto& fam : cover.families) {
        std::vector<std::vector<int>> trimmed;
        for (const auto& set : fam) {
            std::vector<int> s;
            for (int v : set)
                if (!taken[v]) {
                    taken[v] = 1;
                    s.push_back(v);
                }
            if (!s.empty()) {
                std::sort(s.begin(), s.end());
                trimmed.push_back(std::move(s));
            }
        }
        out.partition.families.push_back(std::move(trimmed));
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!taken[v])
            throw std::runtime_error("sparse_partition: vertex " + std::to_string(v) +
                                     " covered by no set");
    auto rep = r_multiplicity(g, out.partition, r, exec);
    out.tau = rep.tau;
    out.sigma = r > 0.0 ? cover.bound / r
                        : (cover.bound == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    return out;
}

// ---- JSON ----

using ojson = nlohmann::ordered_json;

std::string cover_to_json(const Cover& cover) {
    ojson j;
    j["scale"] = cover.scale;
    j["bound"] = cover.bound;
    j["families"] = cover.families;
    j["producer"] = cover.producer;
    return j.dump() + "\n";
}

Cover cover_from_json(const std::string& text) {
    ojson j = ojson::parse(text);
    Cover c;
    c.scale = j.at("scale").get<double>();
    c.bound = j.at("bound").get<double>();
    c.families = j.at("families").get<std::vector<std::vector<std::vector<int>>>>();
    c.producer = j.value("producer", std::string{});
    return c;
}

std::string coloring_to_json(const ColoredPartition& c) {
    ojson j;
    j["ell"] = c.ell;
    j["bound"] = c.bound;
    j["num_colors"] = c.num_colors;
    j["colors"] = c.colors;
    return j.dump() + "\n";
}

ColoredPartition coloring_from_json(const std::string& text) {
    ojson j = ojson::parse(text);
    ColoredPartition c;
    c.ell = j.at("ell").get<int>();
    c.bound = j.at("bound").get<double>();
    c.num_colors = j.at("num_colors").get<int>();
    c.colors = j.at("colors").get<std::vector<int>>();
    return c;
}

void write_cover_file(const std::string& path, const Cover& cover) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cover file: " + path);
    out << cover_to_json(cover);
}

Cover read_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cover file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return cover_from_json(ss.str());
}

} // namespace wdc
