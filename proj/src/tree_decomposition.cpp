#include "wdc/tree_decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wdc {

namespace {

std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

std::vector<std::vector<int>> RootedTreeDecomposition::children() const {
    std::vector<std::vector<int>> ch(bags.size());
    for (int t = 0; t < num_nodes(); ++t)
        if (parent[t] >= 0) ch[parent[t]].push_back(t);
    return ch;
}

int td_width(const RootedTreeDecomposition& td) {
    int w = -1;
    for (const auto& b : td.bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

int td_adhesion(const RootedTreeDecomposition& td) {
    int a = 0;
    for (int t = 0; t < td.num_nodes(); ++t)
        if (td.parent[t] >= 0)
            a = std::max(a, static_cast<int>(
                                sorted_intersection(td.bags[t], td.bags[td.parent[t]]).size()));
    return a;
}

TdReport validate_td(const WeightedGraph& g, const RootedTreeDecomposition& td) {
    TdReport rep;
    rep.width = td_width(td);
    rep.adhesion = td_adhesion(td);

    std::vector<char> seen(g.num_vertices(), 0);
    for (const auto& b : td.bags)
        for (int v : b) {
            if (v < 0 || v >= g.num_vertices()) {
                rep.covers_vertices = false;
                rep.offending_vertex = v;
                return rep;
            }
            seen[v] = 1;
        }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!seen[v]) {
            rep.covers_vertices = false;
            rep.offending_vertex = v;
            break;
        }

    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        int u = g.edge_u(e), v = g.edge_v(e);
        bool found = false;
        for (const auto& b : td.bags)
            if (std::binary_search(b.begin(), b.end(), u) &&
                std::binary_search(b.begin(), b.end(), v)) {
                found = true;
                break;
            }
        if (!found) {
            rep.covers_edges = false;
            rep.offending_edge = static_cast<long>(e);
            break;
        }
    }

    // each vertex induces a connected subtree: count nodes containing v and
    // tree edges whose both ends contain v; connected iff nodes = edges + 1
    std::vector<int> nodes_with(g.num_vertices(), 0), edges_with(g.num_vertices(), 0);
    for (const auto& b : td.bags)
        for (int v : b) ++nodes_with[v];
    for (int t = 0; t < td.num_nodes(); ++t)
        if (td.parent[t] >= 0)
            for (int v : sorted_intersection(td.bags[t], td.bags[td.parent[t]])) ++edges_with[v];
    for (int v = 0; v < g.num_vertices(); ++v)
        if (nodes_with[v] > 0 && nodes_with[v] != edges_with[v] + 1) {
            rep.subtrees_connected = false;
            rep.offending_vertex = v;
            break;
        }

    rep.pass = rep.covers_vertices && rep.covers_edges && rep.subtrees_connected;
    return rep;
}

RootedTreeDecomposition reduce_td(const RootedTreeDecomposition& td) {
    int n = td.num_nodes();
    std::vector<std::vector<int>> bags = td.bags;
    std::vector<int> parent = td.parent;
    std::vector<char> alive(n, 1);

    // contract a child into its parent whenever one bag contains the other;
    // the root has no parent and therefore always survives
    bool changed = true;
    while (changed) {
        changed = false;
        for (int t = 0; t < n; ++t) {
            if (!alive[t] || parent[t] < 0) continue;
            int p = parent[t];
            if (is_subset(bags[t], bags[p]) || is_subset(bags[p], bags[t])) {
                if (is_subset(bags[p], bags[t])) bags[p] = bags[t];
                alive[t] = 0;
                for (int u = 0; u < n; ++u)
                    if (alive[u] && parent[u] == t) parent[u] = p;
                changed = true;
            }
        }
    }

    std::vector<int> new_id(n, -1);
    RootedTreeDecomposition out;
    for (int t = 0; t < n; ++t)
        if (alive[t]) {
            new_id[t] = out.num_nodes();
            out.bags.push_back(bags[t]);
            out.parent.push_back(-1);
        }
    for (int t = 0; t < n; ++t)
        if (alive[t] && parent[t] >= 0) out.parent[new_id[t]] = new_id[parent[t]];
    out.root = new_id[td.root];
    return out;
}

RootedTreeDecomposition reroot(const RootedTreeDecomposition& td, int new_root) {
    int n = td.num_nodes();
    std::vector<std::vector<int>> adj(n);
    for (int t = 0; t < n; ++t)
        if (td.parent[t] >= 0) {
            adj[t].push_back(td.parent[t]);
            adj[td.parent[t]].push_back(t);
        }
    RootedTreeDecomposition out;
    out.bags = td.bags;
    out.parent.assign(n, -1);
    out.root = new_root;
    std::vector<int> stack{new_root};
    std::vector<char> seen(n, 0);
    seen[new_root] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                out.parent[u] = t;
                stack.push_back(u);
            }
    }
    for (int t = 0; t < n; ++t)
        if (!seen[t]) throw std::invalid_argument("reroot: bag tree is disconnected");
    return out;
}

RootedTreeDecomposition read_pace(std::istream& in, int root) {
    std::string line;
    int nb = -1, n = -1;
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, tdw;
            int wp1;
            if (!(ls >> s >> tdw >> nb >> wp1 >> n) || tdw != "td")
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad td header");
            bags.assign(nb, {});
        } else if (line[0] == 'b') {
            char b;
            int id;
            ls >> b >> id;
            if (nb < 0 || id < 1 || id > nb)
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad bag id");
            int v;
            while (ls >> v) {
                if (v < 1 || v > n)
                    throw std::runtime_error("line " + std::to_string(lineno) +
                                             ": bag vertex out of range");
                bags[id - 1].push_back(v - 1);
            }
        } else {
            int a, b;
            std::istringstream ls2(line);
            if (!(ls2 >> a >> b) || a < 1 || b < 1 || a > nb || b > nb)
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad tree edge");
            edges.emplace_back(a - 1, b - 1);
        }
    }
    if (nb < 0) throw std::runtime_error("missing 's td' header");
    if (static_cast<int>(edges.size()) != std::max(nb - 1, 0))
        throw std::runtime_error("bag tree has " + std::to_string(edges.size()) +
                                 " edges, expected " + std::to_string(std::max(nb - 1, 0)));
    RootedTreeDecomposition td;
    td.bags = std::move(bags);
    for (auto& b : td.bags) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    td.parent.assign(nb, -1);
    td.root = root;
    // orient edges away from root
    std::vector<std::vector<int>> adj(nb);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> stack{root};
    std::vector<char> seen(nb, 0);
    if (root < 0 || root >= nb) throw std::runtime_error("root bag out of range");
    seen[root] = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int u : adj[t])
            if (!seen[u]) {
                seen[u] = 1;
                td.parent[u] = t;
                stack.push_back(u);
            }
    }
    for (int t = 0; t < nb; ++t)
        if (!seen[t]) throw std::runtime_error("bag tree is disconnected");
    return td;
}

RootedTreeDecomposition read_pace_file(const std::string& path, int root) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open td file: " + path);
    return read_pace(in, root);
}

void write_pace(std::ostream& out, const RootedTreeDecomposition& td, int n_vertices) {
    out << "s td " << td.num_nodes() << ' ' << td_width(td) + 1 << ' ' << n_vertices << '\n';
    for (int t = 0; t < td.num_nodes(); ++t) {
        out << "b " << t + 1;
        for (int v : td.bags[t]) out << ' ' << v + 1;
        out << '\n';
    }
    for (int t = 0; t < td.num_nodes(); ++t)
        if (td.parent[t] >= 0) out << td.parent[t] + 1 << ' ' << t + 1 << '\n';
}

void write_pace_file(const std::string& path, const RootedTreeDecomposition& td, int n_vertices) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write td file: " + path);
    write_pace(out, td, n_vertices);
}

ConstructionReport validate_construction(const WeightedGraph& g, const Construction& c) {
    ConstructionReport rep;
    rep.td = validate_td(g, c.td);
    rep.adhesion_ok = rep.td.adhesion <= c.theta;
    rep.root_bag_ok = static_cast<int>(c.td.bags[c.td.root].size()) <= c.theta;
    rep.root_nonempty_ok = c.eta == 0 || !c.td.bags[c.td.root].empty();

    auto ch = c.td.children();
    for (int t = 0; t < c.td.num_nodes(); ++t) {
        int p = c.td.parent[t];
        if (p < 0) continue;
        auto inter = sorted_intersection(c.td.bags[t], c.td.bags[p]);
        if (static_cast<int>(inter.size()) <= c.eta) continue;
        // one end must be childless with at most one vertex beyond the other bag
        auto extra = [&](int a, int b) {
            int cnt = 0;
            for (int v : c.td.bags[a])
                if (!std::binary_search(c.td.bags[b].begin(), c.td.bags[b].end(), v)) ++cnt;
            return cnt;
        };
        bool ok = (ch[t].empty() && extra(t, p) <= 1) || (ch[p].empty() && extra(p, t) <= 1);
        if (!ok) {
            rep.big_adhesion_edges_ok = false;
            rep.offending_node = t;
            break;
        }
    }
    rep.pass = rep.td.pass && rep.adhesion_ok && rep.root_bag_ok && rep.root_nonempty_ok &&
               rep.big_adhesion_edges_ok;
    return rep;
}

Construction normalize(const WeightedGraph& g, const RootedTreeDecomposition& td, int theta) {
    if (td_adhesion(td) > theta)
        throw std::invalid_argument("normalize: adhesion exceeds theta");
    Construction c;
    c.theta = theta;
    c.eta = theta;

    // first nonempty bag in BFS order from the current root
    int t0 = -1;
    {
        auto ch = td.children();
        std::vector<int> order{td.root};
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int u : ch[order[i]]) order.push_back(u);
        for (int t : order)
            if (!td.bags[t].empty()) {
                t0 = t;
                break;
            }
    }
    if (t0 < 0) {
        if (g.num_vertices() > 0)
            throw std::runtime_error("normalize: all bags empty but graph is nonempty");
        // empty graph: trivial construction with a single empty bag
        c.td.bags = {{}};
        c.td.parent = {-1};
        c.td.root = 0;
        c.eta = 0;
        return c;
    }
    int v0 = td.bags[t0].front();

    RootedTreeDecomposition rt = reroot(td, t0);
    int fresh = rt.num_nodes();
    rt.bags.push_back({v0});
    rt.parent.push_back(-1);
    rt.parent[t0] = fresh;
    rt.root = fresh;
    c.td = std::move(rt);
    return c;
}

} // namespace wdc
