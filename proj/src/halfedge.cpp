#include "gcx/halfedge.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gcx {

int comm_graph::num_edges() const {
    int m = 0;
    for (int f = 0; f < flag_count(); ++f)
        if (sigma[f] > f) ++m;
    return m;
}

std::vector<std::pair<int, int>> comm_graph::edge_list() const {
    std::vector<std::pair<int, int>> es;
    for (int f = 0; f < flag_count(); ++f)
        if (sigma[f] > f) es.push_back({f, sigma[f]});
    return es;
}

int comm_graph::valence(int v) const {
    int n = 0;
    for (int f = 0; f < flag_count(); ++f)
        if (vertex_of[f] == v) ++n;
    return n;
}

void validate(const comm_graph& g) {
    if (g.num_vertices <= 0)
        throw std::invalid_argument("graph needs at least one vertex");
    int m = g.flag_count();
    if ((int)g.sigma.size() != m)
        throw std::invalid_argument("sigma size mismatch");
    if ((int)g.genus.size() != g.num_vertices)
        throw std::invalid_argument("genus label count mismatch");
    for (int f = 0; f < m; ++f) {
        if (g.vertex_of[f] < 0 || g.vertex_of[f] >= g.num_vertices)
            throw std::invalid_argument("flag attached to unknown vertex");
        if (g.sigma[f] < 0 || g.sigma[f] >= m || g.sigma[g.sigma[f]] != f)
            throw std::invalid_argument("sigma is not an involution");
    }
    std::vector<char> seen(m, 0);
    for (int f : g.legs) {
        if (f < 0 || f >= m || g.sigma[f] != f)
            throw std::invalid_argument("leg list entry is not a fixed point");
        if (seen[f]) throw std::invalid_argument("duplicate leg");
        seen[f] = 1;
    }
    for (int f = 0; f < m; ++f)
        if (g.sigma[f] == f && !seen[f])
            throw std::invalid_argument("unlabeled fixed point");
    for (int v = 0; v < g.num_vertices; ++v)
        if (g.genus[v] < 0)
            throw std::invalid_argument("negative genus label");
    if (!is_connected(g))
        throw std::invalid_argument("graph is not connected");
}

bool is_connected(const comm_graph& g) {
    if (g.num_vertices == 0) return false;
    std::vector<char> vis(g.num_vertices, 0);
    std::vector<int> stack = {0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int f = 0; f < g.flag_count(); ++f) {
            if (g.vertex_of[f] != v || g.is_leg(f)) continue;
            int w = g.vertex_of[g.sigma[f]];
            if (!vis[w]) {
                vis[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == g.num_vertices;
}

bool is_stable(const comm_graph& g) {
    for (int v = 0; v < g.num_vertices; ++v)
        if (2 * (g.genus[v] - 1) + g.valence(v) <= 0) return false;
    return true;
}

bool is_extended_stable(const comm_graph& g) {
    for (int v = 0; v < g.num_vertices; ++v) {
        if (2 * (g.genus[v] - 1) + g.valence(v) > 0) continue;
        if (g.genus[v] != 0 || g.valence(v) != 2) return false;
        bool touches_leg = false;
        for (int f = 0; f < g.flag_count(); ++f)
            if (g.vertex_of[f] == v && g.is_leg(f)) touches_leg = true;
        if (!touches_leg) return false;
    }
    return true;
}

int first_betti(const comm_graph& g) {
    return g.num_edges() - g.num_vertices + 1;
}

int total_genus(const comm_graph& g) {
    return first_betti(g) + std::accumulate(g.genus.begin(), g.genus.end(), 0);
}

comm_graph single_vertex(int genus, int legs) {
    comm_graph g;
    g.num_vertices = 1;
    g.genus = {genus};
    for (int i = 0; i < legs; ++i) add_leg(g, 0);
    return g;
}

void add_edge(comm_graph& g, int u, int v) {
    int f = g.flag_count();
    g.vertex_of.push_back(u);
    g.vertex_of.push_back(v);
    g.sigma.push_back(f + 1);
    g.sigma.push_back(f);
}

void add_loop(comm_graph& g, int v) { add_edge(g, v, v); }

void add_leg(comm_graph& g, int v) {
    int f = g.flag_count();
    g.vertex_of.push_back(v);
    g.sigma.push_back(f);
    g.legs.push_back(f);
}

comm_contraction contract_edge(const comm_graph& g, int flag) {
    int h1 = std::min(flag, g.sigma[flag]);
    int h2 = std::max(flag, g.sigma[flag]);
    if (h1 == h2) throw std::invalid_argument("cannot contract a leg");
    int u = g.vertex_of[h1], w = g.vertex_of[h2];
    int m = g.flag_count();

    comm_contraction out;
    out.flag_map.assign(m, -1);
    int nf = 0;
    for (int f = 0; f < m; ++f)
        if (f != h1 && f != h2) out.flag_map[f] = nf++;

    out.vertex_map.resize(g.num_vertices);
    if (u == w) {
        std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
        out.result.num_vertices = g.num_vertices;
        out.result.genus = g.genus;
        out.result.genus[u] += 1;
    } else {
        int lo = std::min(u, w), hi = std::max(u, w);
        for (int v = 0; v < g.num_vertices; ++v)
            out.vertex_map[v] = (v == hi) ? lo : (v > hi ? v - 1 : v);
        out.result.num_vertices = g.num_vertices - 1;
        out.result.genus.assign(out.result.num_vertices, 0);
        for (int v = 0; v < g.num_vertices; ++v)
            out.result.genus[out.vertex_map[v]] += g.genus[v];
    }

    out.result.vertex_of.assign(nf, -1);
    out.result.sigma.assign(nf, -1);
    for (int f = 0; f < m; ++f) {
        if (out.flag_map[f] < 0) continue;
        out.result.vertex_of[out.flag_map[f]] = out.vertex_map[g.vertex_of[f]];
        out.result.sigma[out.flag_map[f]] = out.flag_map[g.sigma[f]];
    }
    for (int f : g.legs) out.result.legs.push_back(out.flag_map[f]);
    return out;
}

static int leg_flag(const comm_graph& g, int label) {
    if (label < 1 || label > g.num_legs())
        throw std::invalid_argument("unknown leg label");
    return g.legs[label - 1];
}

comm_graph glue_and_contract(const comm_graph& g, int leg_i, const comm_graph& h, int leg_j) {
    int fi = leg_flag(g, leg_i);
    int fj = leg_flag(h, leg_j);
    comm_graph u;
    u.num_vertices = g.num_vertices + h.num_vertices;
    u.genus = g.genus;
    u.genus.insert(u.genus.end(), h.genus.begin(), h.genus.end());
    u.vertex_of = g.vertex_of;
    u.sigma = g.sigma;
    int off = g.flag_count();
    for (int f = 0; f < h.flag_count(); ++f) {
        u.vertex_of.push_back(h.vertex_of[f] + g.num_vertices);
        u.sigma.push_back(h.sigma[f] + off);
    }
    u.sigma[fi] = fj + off;
    u.sigma[fj + off] = fi;
    for (int f : g.legs)
        if (f != fi) u.legs.push_back(f);
    for (int f : h.legs)
        if (f != fj) u.legs.push_back(f + off);
    return contract_edge(u, fi).result;
}

int bv_graph::black_count() const {
    int n = 0;
    for (auto [a, b] : g.edge_list())
        if (!white[a]) ++n;
    return n;
}

std::vector<std::pair<int, int>> bv_graph::black_edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : g.edge_list())
        if (!white[a]) out.push_back({a, b});
    return out;
}

void validate(const bv_graph& b) {
    validate(b.g);
    if ((int)b.white.size() != b.g.flag_count())
        throw std::invalid_argument("paint vector does not cover the flags");
    for (int f = 0; f < b.g.flag_count(); ++f) {
        if (b.white[f] != b.white[b.g.sigma[f]])
            throw std::invalid_argument("edge painted two colors");
        if (b.g.is_leg(f) && b.white[f])
            throw std::invalid_argument("legs carry no paint");
    }
}

comm_graph self_glue(const comm_graph& g, int leg_i, int leg_j) {
    if (leg_i == leg_j) throw std::invalid_argument("self_glue needs two distinct legs");
    int fi = leg_flag(g, leg_i);
    int fj = leg_flag(g, leg_j);
    comm_graph u = g;
    u.sigma[fi] = fj;
    u.sigma[fj] = fi;
    u.legs.clear();
    for (int f : g.legs)
        if (f != fi && f != fj) u.legs.push_back(f);
    return contract_edge(u, fi).result;
}

} // namespace gcx
