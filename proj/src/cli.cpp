#include "wdc/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wdc/annulus.hpp"
#include "wdc/generators.hpp"
#include "wdc/layer_combine.hpp"
#include "wdc/tree_glue.hpp"

namespace wdc {

namespace {

class CsvSink {
public:
    explicit CsvSink(const std::string& path) {
        if (path.empty()) return;
        out_.open(path);
        if (!out_) throw std::runtime_error("cannot write csv file: " + path);
        out_ << "scale,families,certified_bound,observed_bound,tau,wall_ms\n";
    }
    void row(double scale, std::size_t families, double certified, double observed, int tau,
             double wall_ms) {
        if (!out_.is_open()) return;
        out_ << scale << ',' << families << ',' << certified << ',' << observed << ',' << tau
             << ',' << wall_ms << '\n';
    }

private:
    std::ofstream out_;
};

std::string scale_suffix(const std::string& path, std::size_t index, std::size_t total) {
    if (total <= 1) return path;
    auto dot = path.find_last_of('.');
    std::string stem = dot == std::string::npos ? path : path.substr(0, dot);
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    return stem + "." + std::to_string(index) + ext;
}

struct ScaleOutcome {
    bool verified = true;
    double observed = 0.0;
    int tau = 0;
};

// verify a cover, write artifacts, report one CSV row
ScaleOutcome handle_cover(const WeightedGraph& g, const Cover& cover, const RunSpec& spec,
                          CsvSink& csv, std::size_t index, std::size_t total, double wall_ms,
                          std::ostream& log) {
    ScaleOutcome oc;
    if (!spec.no_verify) {
        auto rep = verify_cover(g, cover);
        oc.verified = rep.pass;
        oc.observed = rep.observed_infinite ? std::numeric_limits<double>::infinity()
                                            : rep.observed_bound;
        auto mult = r_multiplicity(g, cover, cover.scale / 2.0);
        oc.tau = mult.tau;
        log << (rep.pass ? "verified" : "FAILED") << " cover at scale " << cover.scale
            << ": families=" << cover.families.size() << " certified=" << cover.bound
            << " observed=" << oc.observed << " tau(r/2)=" << oc.tau << "\n";
    }
    if (!spec.out_cover.empty())
        write_cover_file(scale_suffix(spec.out_cover, index, total), cover);
    csv.row(cover.scale, cover.families.size(), cover.bound, oc.observed, oc.tau, wall_ms);
    return oc;
}

ScaleOutcome handle_coloring(const WeightedGraph& g, const ColoredPartition& col,
                             const RunSpec& spec, CsvSink& csv, std::size_t index,
                             std::size_t total, double wall_ms, std::ostream& log) {
    ScaleOutcome oc;
    Cover as_cover = coloring_to_cover(g, col);
    as_cover.producer = spec.command;
    if (!spec.no_verify) {
        auto rep = verify_coloring(g, col);
        oc.verified = rep.pass;
        oc.observed = rep.observed_infinite ? std::numeric_limits<double>::infinity()
                                            : static_cast<double>(rep.observed_bound);
        auto mult = r_multiplicity(g, as_cover, as_cover.scale / 2.0);
        oc.tau = mult.tau;
        log << (rep.pass ? "verified" : "FAILED") << " colouring at ell " << col.ell << ": m="
            << col.num_colors << " certified=" << col.bound << " observed=" << oc.observed
            << " tau(r/2)=" << oc.tau << "\n";
    }
    if (!spec.out_cover.empty())
        write_cover_file(scale_suffix(spec.out_cover, index, total), as_cover);
    csv.row(col.ell, col.num_colors, col.bound, oc.observed, oc.tau, wall_ms);
    return oc;
}

int run_gen(const RunSpec& spec, std::ostream& log) {
    WeightedGraph g;
    if (spec.gen_type == "grid") {
        g = gen_grid(spec.gen_dims, spec.gen_diagonals);
        if (!spec.out_layering.empty()) {
            if (spec.gen_dims.size() != 2)
                throw std::runtime_error("row layering needs a 2-d grid");
            write_layering_file(spec.out_layering,
                                grid_row_layering(spec.gen_dims[0], spec.gen_dims[1]));
        }
        if (!spec.out_td.empty()) {
            if (spec.gen_dims.size() != 2)
                throw std::runtime_error("column decomposition needs a 2-d grid");
            write_pace_file(spec.out_td, grid_column_td(spec.gen_dims[0], spec.gen_dims[1]),
                            g.num_vertices());
        }
        if (!spec.out_embedding.empty())
            write_embedding_file(spec.out_embedding, grid_embedding(spec.gen_dims, spec.stretch));
    } else if (spec.gen_type == "cactus") {
        g = gen_cactus(spec.gen_n, spec.seed);
    } else if (spec.gen_type == "ktree") {
        auto gt = gen_partial_ktree(spec.gen_n, spec.gen_k, spec.seed);
        g = std::move(gt.graph);
        if (!spec.out_td.empty()) write_pace_file(spec.out_td, gt.td, g.num_vertices());
    } else if (spec.gen_type == "planar") {
        g = gen_planar(spec.gen_n, spec.seed);
    } else if (spec.gen_type == "stretch") {
        g = gen_stretch(gen_grid(spec.gen_dims, false), spec.stretch_k, spec.stretch_p);
    } else if (spec.gen_type == "subdivide") {
        g = gen_one_planar_stress(read_dimacs_file(spec.graph_path));
    } else {
        throw std::runtime_error("unknown generator type: " + spec.gen_type);
    }
    std::string out = spec.out_graph.empty() ? spec.graph_path : spec.out_graph;
    if (out.empty()) throw std::runtime_error("generator needs an output path");
    write_dimacs_file(out, g);
    log << "generated " << spec.gen_type << ": n=" << g.num_vertices()
        << " m=" << g.num_edges() << " -> " << out << "\n";
    return 0;
}

int run_inner(const RunSpec& spec, std::ostream& log) {
    if (spec.command == "gen") return run_gen(spec, log);

    if (spec.graph_path.empty()) throw std::runtime_error("missing --graph");
    WeightedGraph g = read_dimacs_file(spec.graph_path);
    CsvSink csv(spec.out_csv);
    bool all_ok = true;

    auto ells = spec.ells.empty() ? std::vector<int>{1} : spec.ells;
    auto rs = spec.rs.empty() ? std::vector<double>{1.0} : spec.rs;

    auto timed = [](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        auto result = fn();
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return std::make_pair(std::move(result), ms);
    };

    if (spec.command == "tw") {
        if (spec.td_path.empty()) throw std::runtime_error("missing --td");
        auto td = read_pace_file(spec.td_path, spec.root);
        for (std::size_t i = 0; i < ells.size(); ++i) {
            auto [col, ms] = timed([&] { return tw_pipeline(g, td, ells[i], spec.width); });
            all_ok &= handle_coloring(g, col, spec, csv, i, ells.size(), ms, log).verified;
        }
    } else if (spec.command == "layered-tw") {
        if (spec.td_path.empty()) throw std::runtime_error("missing --td");
        if (spec.layering_path.empty()) throw std::runtime_error("missing --layering");
        auto td = read_pace_file(spec.td_path, spec.root);
        auto L = read_layering_file(spec.layering_path, g);
        int w = spec.width >= 0 ? spec.width : 1;
        for (std::size_t i = 0; i < ells.size(); ++i) {
            auto [col, ms] =
                timed([&] { return layered_tw_pipeline(g, L, td, w, ells[i], spec.slab); });
            all_ok &= handle_coloring(g, col, spec, csv, i, ells.size(), ms, log).verified;
        }
    } else if (spec.command == "minor") {
        if (spec.td_path.empty()) throw std::runtime_error("missing --td (torso json)");
        auto dec = read_minor_decomposition_file(spec.td_path);
        int w = spec.width >= 0 ? spec.width : spec.p + 1;
        for (std::size_t i = 0; i < ells.size(); ++i) {
            auto [col, ms] =
                timed([&] { return minor_pipeline(g, dec, spec.p, w, ells[i]); });
            all_ok &= handle_coloring(g, col, spec, csv, i, ells.size(), ms, log).verified;
        }
    } else if (spec.command == "k3p" || spec.command == "genus") {
        int p = spec.command == "genus" ? 2 * spec.genus + 3 : spec.p;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            auto [cover, ms] = timed([&] { return k3p_pipeline(g, p, rs[i], spec.slab); });
            all_ok &= handle_cover(g, cover, spec, csv, i, rs.size(), ms, log).verified;
        }
    } else if (spec.command == "embed") {
        if (spec.embedding_path.empty()) throw std::runtime_error("missing --embedding");
        auto emb = read_embedding_file(spec.embedding_path, g, spec.dim, spec.stretch);
        for (std::size_t i = 0; i < ells.size(); ++i) {
            auto [col, ms] = timed([&] { return embed_color(g, emb, ells[i]); });
            all_ok &= handle_coloring(g, col, spec, csv, i, ells.size(), ms, log).verified;
        }
    } else if (spec.command == "annulus") {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            double r = rs[i];
            auto [cover, ms] =
                timed([&] { return annulus_cover(g, r, spec.q, spec.kappa, spec.p); });
            auto oc = handle_cover(g, cover, spec, csv, i, rs.size(), ms, log);
            if (!oc.verified) {
                all_ok = false;
                // promise violated: extract a witness from some component
                for (const auto& comp : connected_components(g)) {
                    auto dec = annulus_decompose(g, comp.front(), r, spec.q, spec.kappa, spec.p);
                    auto viol = find_violation(g, dec);
                    if (!viol) continue;
                    auto model = extract_fat_witness(g, dec, *viol);
                    auto mrep = verify_fat_model(g, model);
                    log << "promise violation at r=" << r << ": pair (" << viol->x << ","
                        << viol->y << ") distance " << viol->distance << "; extracted fat K_{2,"
                        << spec.p << "} witness "
                        << (mrep.pass ? "verifies" : ("FAILS: " + mrep.failure)) << "\n";
                    if (!spec.out_witness.empty())
                        std::ofstream(scale_suffix(spec.out_witness, i, rs.size()))
                            << fat_model_to_json(model);
                    break;
                }
            }
        }
    } else if (spec.command == "verify") {
        if (spec.cover_path.empty()) throw std::runtime_error("missing --cover");
        auto cover = read_cover_file(spec.cover_path);
        auto rep = verify_cover(g, cover);
        log << (rep.pass ? "verified" : "FAILED") << " cover at scale " << cover.scale
            << ": families=" << cover.families.size() << " certified=" << cover.bound
            << " observed=" << rep.observed_bound << "\n";
        all_ok = rep.pass;
    } else {
        throw std::runtime_error("unknown command: " + spec.command);
    }
    return all_ok ? 0 : 1;
}

} // namespace

int run(const RunSpec& spec, std::ostream& log) {
    try {
        return run_inner(spec, log);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return 2;
    }
}

} // namespace wdc
