#include "wdc/layering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wdc {

ProjectionCheck check_projection(const WeightedGraph& g, const std::vector<double>& f,
                                 double eps) {
    ProjectionCheck res;
    if (static_cast<int>(f.size()) != g.num_vertices())
        throw std::invalid_argument("projection size mismatch");
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        if (std::abs(f[g.edge_u(e)] - f[g.edge_v(e)]) > g.edge_weight(e) + eps) {
            res.ok = false;
            res.offending_edge = static_cast<long>(e);
            return res;
        }
    }
    return res;
}

std::vector<double> bfs_layering(const WeightedGraph& g, int root) {
    std::vector<double> L(g.num_vertices(), 0.0);
    std::vector<char> placed(g.num_vertices(), 0);
    DijkstraWorkspace ws;
    auto run_from = [&](int r) {
        int src[1] = {r};
        ws.run(g, src, -1.0, [&](int v, double d) {
            L[v] = d;
            placed[v] = 1;
        });
    };
    if (root >= 0 && root < g.num_vertices()) run_from(root);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!placed[v]) run_from(v);
    return L;
}

std::vector<Slab> slabs(const WeightedGraph& g, const std::vector<double>& L, double S,
                        double offset) {
    if (!(S > 0.0)) throw std::invalid_argument("slabs: width must be positive");
    if (static_cast<int>(L.size()) != g.num_vertices())
        throw std::invalid_argument("slabs: projection size mismatch");
    std::vector<Slab> out;
    if (g.num_vertices() == 0) return out;
    double anchor = *std::min_element(L.begin(), L.end()) + offset;
    std::vector<std::pair<long, int>> keyed(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        long k = static_cast<long>(std::floor((L[v] - anchor) / S));
        // guard against rounding at band boundaries
        if (L[v] < anchor + static_cast<double>(k) * S) --k;
        if (L[v] >= anchor + static_cast<double>(k + 1) * S) ++k;
        keyed[v] = {k, v};
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto [k, v] : keyed) {
        if (out.empty() || out.back().index != k) {
            Slab s;
            s.index = k;
            s.lo = anchor + static_cast<double>(k) * S;
            s.hi = anchor + static_cast<double>(k + 1) * S;
            out.push_back(std::move(s));
        }
        out.back().core.push_back(v);
    }
    return out;
}

std::vector<double> read_layering_file(const std::string& path, const WeightedGraph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open layering file: " + path);
    std::vector<double> L(g.num_vertices());
    std::vector<char> seen(g.num_vertices(), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
        std::istringstream ls(line);
        char tag;
        long v, layer;
        if (!(ls >> tag >> v >> layer) || tag != 'v')
            throw std::runtime_error("line " + std::to_string(lineno) + ": bad layering record");
        if (v < 1 || v > g.num_vertices())
            throw std::runtime_error("line " + std::to_string(lineno) + ": vertex out of range");
        L[v - 1] = static_cast<double>(layer);
        seen[v - 1] = 1;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!seen[v])
            throw std::runtime_error("layering misses vertex " + std::to_string(v + 1));
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (std::abs(L[g.edge_u(e)] - L[g.edge_v(e)]) > 1.0)
            throw std::runtime_error("not a layering: edge (" + std::to_string(g.edge_u(e) + 1) +
                                     "," + std::to_string(g.edge_v(e) + 1) +
                                     ") spans non-consecutive layers");
    return L;
}

void write_layering_file(const std::string& path, const std::vector<double>& L) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write layering file: " + path);
    for (std::size_t v = 0; v < L.size(); ++v)
        out << "v " << v + 1 << ' ' << static_cast<long>(std::llround(L[v])) << '\n';
}

} // namespace wdc
