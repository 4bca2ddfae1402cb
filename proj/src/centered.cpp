#include "wdc/centered.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wdc {

double centered_bound(int k, double x, double y) {
    if (k < 0) throw std::invalid_argument("centered_bound: k must be nonnegative");
    if (x < 0.0) throw std::invalid_argument("centered_bound: x must be nonnegative");
    if (!(y > 0.0)) throw std::invalid_argument("centered_bound: y must be positive");
    return std::ldexp(y + 2.0 * x + 2.0, k) - 2.0 * x - 2.0;
}

double all_centered_bound(int k, double r) { return centered_bound(k, r, 1.0); }

ClaimCheck check_centered_claim(const WeightedGraph& g, const CenteredSetClaim& claim) {
    ClaimCheck res;
    if (static_cast<int>(claim.centers.size()) > claim.k) {
        res.ok = false;
        res.too_many_centers = true;
        return res;
    }
    if (claim.z.empty()) return res;
    auto near = neighborhood(g, claim.centers, claim.r);
    std::vector<char> in_near(g.num_vertices(), 0);
    for (int v : near) in_near[v] = 1;
    for (int v : claim.z)
        if (!in_near[v]) {
            res.ok = false;
            res.uncovered_vertex = v;
            return res;
        }
    return res;
}

ColoredPartition merge_centered(const WeightedGraph& g, const CenteredSetClaim& claim,
                                const std::vector<int>& base_colors, double base_bound,
                                int num_colors, const std::vector<int>& z_colors, int ell) {
    if (static_cast<int>(base_colors.size()) != g.num_vertices())
        throw std::invalid_argument("merge_centered: base colour size mismatch");
    if (z_colors.size() != claim.z.size())
        throw std::invalid_argument("merge_centered: z colour size mismatch");
    auto chk = check_centered_claim(g, claim);
    if (!chk.ok) {
        if (chk.too_many_centers)
            throw std::runtime_error("merge_centered: more than k centers");
        throw std::runtime_error("merge_centered: vertex " +
                                 std::to_string(chk.uncovered_vertex) +
                                 " of Z is outside the r-neighbourhood of the centers");
    }

    ColoredPartition out;
    out.ell = ell;
    out.num_colors = num_colors;
    out.colors = base_colors;
    std::vector<char> in_z(g.num_vertices(), 0);
    for (std::size_t i = 0; i < claim.z.size(); ++i) {
        int v = claim.z[i];
        if (out.colors[v] != -1)
            throw std::invalid_argument("merge_centered: base already colours a Z vertex");
        if (z_colors[i] < 0 || z_colors[i] >= num_colors)
            throw std::invalid_argument("merge_centered: Z colour out of range");
        out.colors[v] = z_colors[i];
        in_z[v] = 1;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (out.colors[v] < 0)
            throw std::invalid_argument("merge_centered: base misses a non-Z vertex");

    if (claim.z.empty())
        out.bound = base_bound;
    else
        out.bound = centered_bound(claim.k, claim.r, std::max(base_bound, 1.0));
    return out;
}

ColoredPartition apex_color(const WeightedGraph& g, std::span<const int> apex,
                            const Pipeline& base, int ell) {
    std::vector<char> is_apex(g.num_vertices(), 0);
    for (int v : apex) {
        if (v < 0 || v >= g.num_vertices())
            throw std::invalid_argument("apex_color: apex vertex out of range");
        is_apex[v] = 1;
    }
    std::vector<int> rest;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!is_apex[v]) rest.push_back(v);
    auto sub = induce(g, rest);
    ColoredPartition inner = base(sub.graph, sub.to_parent);
    if (inner.ell != ell)
        throw std::invalid_argument("apex_color: base pipeline returned a different power scale");

    std::vector<int> base_colors(g.num_vertices(), -1);
    for (int lv = 0; lv < sub.graph.num_vertices(); ++lv)
        base_colors[sub.to_parent[lv]] = inner.colors[lv];

    CenteredSetClaim claim;
    claim.z.assign(apex.begin(), apex.end());
    std::sort(claim.z.begin(), claim.z.end());
    claim.z.erase(std::unique(claim.z.begin(), claim.z.end()), claim.z.end());
    claim.centers = claim.z;
    claim.k = static_cast<int>(claim.z.size());
    claim.r = 0.0;
    std::vector<int> z_colors(claim.z.size(), 0);
    return merge_centered(g, claim, base_colors, inner.bound, std::max(inner.num_colors, 1),
                          z_colors, ell);
}

ColoredPartition vc_color(const WeightedGraph& g, std::span<const int> s, int k, int ell) {
    if (static_cast<int>(s.size()) > k)
        throw std::invalid_argument("vc_color: cover larger than k");
    std::vector<char> in_s(g.num_vertices(), 0);
    for (int v : s) in_s[v] = 1;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
        if (!in_s[g.edge_u(e)] && !in_s[g.edge_v(e)])
            throw std::runtime_error("vc_color: not a vertex cover, edge (" +
                                     std::to_string(g.edge_u(e)) + "," +
                                     std::to_string(g.edge_v(e)) + ") uncovered");
    ColoredPartition out;
    out.ell = ell;
    out.num_colors = 1;
    out.colors.assign(g.num_vertices(), 0);
    out.bound = centered_bound(k, static_cast<double>(ell), 1.0);
    return out;
}

} // namespace wdc
