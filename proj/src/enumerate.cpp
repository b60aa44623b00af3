#include "gcx/enumerate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gcx/canon.hpp"

namespace gcx {

const char* family_name(family f) {
    switch (f) {
        case family::com_underline: return "com-underline";
        case family::com_bar: return "com-bar";
        case family::ass_underline: return "ass-underline";
        case family::kass: return "kass";
        case family::ass_bar: return "ass-bar";
        case family::rass: return "rass";
        case family::krass: return "krass";
    }
    return "?";
}

family family_from_name(const std::string& name) {
    for (family f : {family::com_underline, family::com_bar, family::ass_underline,
                     family::kass, family::ass_bar, family::rass, family::krass})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown family name: " + name);
}

bool is_comm_family(family f) {
    return f == family::com_underline || f == family::com_bar;
}

namespace {

// grow one edge level: loop additions trade a genus unit for a loop,
// vertex splits undo an edge contraction
void expand_into(const comm_graph& h, std::map<std::string, comm_graph>& out) {
    for (int v = 0; v < h.num_vertices; ++v) {
        if (h.genus[v] >= 1) {
            comm_graph g = h;
            g.genus[v] -= 1;
            add_loop(g, v);
            if (is_stable(g)) {
                auto c = canonical_form(g);
                out.emplace(c.key, c.canonical);
            }
        }
    }
    for (int v = 0; v < h.num_vertices; ++v) {
        std::vector<int> fv;
        for (int f = 0; f < h.flag_count(); ++f)
            if (h.vertex_of[f] == v) fv.push_back(f);
        int m = (int)fv.size();
        for (int mask = 0; mask < (1 << m); ++mask) {
            for (int g1 = 0; g1 <= h.genus[v]; ++g1) {
                comm_graph g = h;
                g.num_vertices += 1;
                int w = g.num_vertices - 1;
                g.genus[v] = h.genus[v] - g1;
                g.genus.push_back(g1);
                for (int i = 0; i < m; ++i)
                    if (mask & (1 << i)) g.vertex_of[fv[i]] = w;
                add_edge(g, v, w);
                if (!is_stable(g)) continue;
                auto c = canonical_form(g);
                out.emplace(c.key, c.canonical);
            }
        }
    }
}

} // namespace

std::vector<std::vector<comm_graph>> enumerate_stable_levels(int genus, int legs,
                                                             int max_edges, family fam) {
    if (!is_comm_family(fam))
        throw std::invalid_argument("enumerate_stable_levels expects a commutative family");
    std::vector<std::vector<comm_graph>> levels(max_edges + 1);
    if (genus >= 0 && legs >= 0 && 2 * (genus - 1) + legs > 0) {
        auto c = canonical_form(single_vertex(genus, legs));
        levels[0].push_back(c.canonical);
    }
    for (int e = 1; e <= max_edges; ++e) {
        std::map<std::string, comm_graph> next;
        for (const auto& h : levels[e - 1]) expand_into(h, next);
        for (auto& [key, g] : next) levels[e].push_back(g);
    }
    if (fam == family::com_underline) {
        for (auto& level : levels) {
            std::vector<comm_graph> kept;
            for (auto& g : level)
                if (std::all_of(g.genus.begin(), g.genus.end(), [](int x) { return x == 0; }))
                    kept.push_back(g);
            level.swap(kept);
        }
    }
    return levels;
}

std::vector<comm_graph> enumerate_stable_graphs(int genus, int legs, int edge_count,
                                                family fam) {
    if (edge_count < 0) return {};
    return enumerate_stable_levels(genus, legs, edge_count, fam)[edge_count];
}

} // namespace gcx
