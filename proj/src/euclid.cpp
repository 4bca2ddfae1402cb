#include "wdc/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wdc {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

} // namespace

EmbeddingCheck check_embedding(const WeightedGraph& g, const Embedding& emb, Exec exec) {
    EmbeddingCheck res;
    if (static_cast<int>(emb.points.size()) != g.num_vertices())
        throw std::invalid_argument("embedding size mismatch");
    for (const auto& p : emb.points)
        if (static_cast<int>(p.size()) != emb.dim)
            throw std::invalid_argument("embedding dimension mismatch");

    int n = g.num_vertices();
    int bad_u = -1, bad_v = -1;
    if (exec == Exec::serial) {
        for (int u = 0; u < n && bad_u < 0; ++u)
            for (int v = u + 1; v < n; ++v)
                if (sq_dist(emb.points[u], emb.points[v]) < 1.0 - 1e-12) {
                    bad_u = u;
                    bad_v = v;
                    break;
                }
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
        for (int u = 0; u < n; ++u) {
            if (bad_u >= 0) continue;
            for (int v = u + 1; v < n; ++v)
                if (sq_dist(emb.points[u], emb.points[v]) < 1.0 - 1e-12) {
#ifdef _OPENMP
#pragma omp critical
#endif
                    {
                        if (bad_u < 0 || std::make_pair(u, v) < std::make_pair(bad_u, bad_v)) {
                            bad_u = u;
                            bad_v = v;
                        }
                    }
                    break;
                }
        }
    }
    if (bad_u >= 0) {
        res.separation_ok = false;
        res.offending = {bad_u, bad_v};
    }
    for (std::size_t e = 0; e < g.num_edges() && res.stretch_ok; ++e) {
        int u = g.edge_u(e), v = g.edge_v(e);
        if (sq_dist(emb.points[u], emb.points[v]) > emb.stretch * emb.stretch + 1e-9) {
            res.stretch_ok = false;
            if (res.separation_ok) res.offending = {u, v};
        }
    }
    res.ok = res.separation_ok && res.stretch_ok;
    return res;
}

LatticeCover make_lattice_cover(int dim, double r) {
    if (dim < 1 || !(r > 0.0))
        throw std::invalid_argument("lattice cover needs dim >= 1 and r > 0");
    LatticeCover c;
    c.dim = dim;
    c.r = r;
    c.s = 2.0 * r;
    return c;
}

int lattice_assign(const std::vector<double>& point, const LatticeCover& cover) {
    if (static_cast<int>(point.size()) != cover.dim)
        throw std::invalid_argument("lattice_assign: dimension mismatch");
    const double side = cover.side();
    const double margin = cover.margin();
    for (int j = 0; j <= cover.dim; ++j) {
        bool deep = true;
        for (int c = 0; c < cover.dim && deep; ++c) {
            double x = point[c] - static_cast<double>(j) * cover.s;
            double off = x - std::floor(x / side) * side;
            if (off < margin - 1e-12 || off > side - margin + 1e-12) deep = false;
        }
        if (deep) return j;
    }
    // per coordinate at most one class is shallow, so d coordinates cannot
    // rule out all d+1 classes
    throw std::logic_error("lattice_assign: no deep class found");
}

double unit_packing_bound(int dim, double side) {
    // points pairwise >= 1 apart own disjoint radius-1/2 balls inside the
    // side+1 cube
    double ball = std::pow(std::acos(-1.0), dim / 2.0) / std::tgamma(dim / 2.0 + 1.0) *
                  std::pow(0.5, dim);
    return std::pow(side + 1.0, dim) / ball;
}

ColoredPartition embed_color(const WeightedGraph& g, const Embedding& emb, int ell, Exec exec) {
    auto chk = check_embedding(g, emb, exec);
    if (!chk.separation_ok)
        throw std::runtime_error("embedding separation claim fails at pair (" +
                                 std::to_string(chk.offending.first) + "," +
                                 std::to_string(chk.offending.second) + ")");
    if (!chk.stretch_ok)
        throw std::runtime_error("embedding stretch claim fails at pair (" +
                                 std::to_string(chk.offending.first) + "," +
                                 std::to_string(chk.offending.second) + ")");
    double r = static_cast<double>(ell) * emb.stretch;
    LatticeCover cover = make_lattice_cover(emb.dim, r);
    ColoredPartition out;
    out.ell = ell;
    out.num_colors = emb.dim + 1;
    out.colors.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v)
        out.colors[v] = lattice_assign(emb.points[v], cover);
    // a component sits inside one deep cell; hop diameter < vertex count
    out.bound = std::max(0.0, std::floor(unit_packing_bound(emb.dim, cover.side())) - 1.0);
    return out;
}

Embedding read_embedding_file(const std::string& path, const WeightedGraph& g, int dim,
                              double stretch) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding file: " + path);
    Embedding emb;
    emb.dim = dim;
    emb.stretch = stretch;
    emb.points.assign(g.num_vertices(), {});
    std::vector<char> seen(g.num_vertices(), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
        std::istringstream ls(line);
        char tag;
        long v;
        if (!(ls >> tag >> v) || tag != 'v')
            throw std::runtime_error("line " + std::to_string(lineno) + ": bad embedding record");
        if (v < 1 || v > g.num_vertices())
            throw std::runtime_error("line " + std::to_string(lineno) + ": vertex out of range");
        std::vector<double> pt(dim);
        for (int c = 0; c < dim; ++c)
            if (!(ls >> pt[c]))
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": expected " + std::to_string(dim) + " coordinates");
        emb.points[v - 1] = std::move(pt);
        seen[v - 1] = 1;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!seen[v])
            throw std::runtime_error("embedding misses vertex " + std::to_string(v + 1));
    return emb;
}

void write_embedding_file(const std::string& path, const Embedding& emb) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write embedding file: " + path);
    char buf[64];
    for (std::size_t v = 0; v < emb.points.size(); ++v) {
        out << "v " << v + 1;
        for (double x : emb.points[v]) {
            std::snprintf(buf, sizeof buf, " %.17g", x);
            out << buf;
        }
        out << '\n';
    }
}

} // namespace wdc
