#include "gcx/ribbon.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gcx/canon.hpp"

namespace gcx {

std::vector<std::pair<int, int>> prestable_graph::edge_list() const {
    std::vector<std::pair<int, int>> es;
    for (int f = 0; f < flag_count(); ++f)
        if (sigma[f] > f) es.push_back({f, sigma[f]});
    return es;
}

int prestable_graph::valence(int v) const {
    int n = 0;
    for (int f = 0; f < flag_count(); ++f)
        if (vertex_of[f] == v) ++n;
    return n;
}

int ghost_genus(const prestable_vertex& v) {
    return 2 * v.gamma + v.beta + (int)v.blocks.size() - 1;
}

int surface_euler(const prestable_vertex& v) {
    return 2 - 2 * v.gamma - v.beta - (int)v.blocks.size();
}

bool is_connected(const prestable_graph& g) {
    if (g.num_vertices == 0) return false;
    std::vector<char> vis(g.num_vertices, 0);
    std::vector<int> stack = {0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int f = 0; f < g.flag_count(); ++f) {
            if (g.vertex_of[f] != v) continue;
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

void validate(const prestable_graph& g) {
    if (g.num_vertices <= 0)
        throw std::invalid_argument("graph needs at least one vertex");
    int m = g.flag_count();
    if ((int)g.sigma.size() != m || (int)g.vdata.size() != g.num_vertices)
        throw std::invalid_argument("field size mismatch");
    for (int f = 0; f < m; ++f) {
        if (g.vertex_of[f] < 0 || g.vertex_of[f] >= g.num_vertices)
            throw std::invalid_argument("flag attached to unknown vertex");
        if (g.sigma[f] < 0 || g.sigma[f] >= m || g.sigma[f] == f ||
            g.sigma[g.sigma[f]] != f)
            throw std::invalid_argument("sigma is not a fixed-point-free involution");
    }
    std::vector<int> seen(m, 0);
    for (int v = 0; v < g.num_vertices; ++v) {
        const auto& d = g.vdata[v];
        if (d.gamma < 0 || d.beta < 0)
            throw std::invalid_argument("negative defect");
        if (d.beta + (int)d.blocks.size() < 1)
            throw std::invalid_argument("ghost surface needs a boundary circle");
        for (const auto& b : d.blocks) {
            if (b.empty()) throw std::invalid_argument("empty block");
            for (int f : b) {
                if (f < 0 || f >= m || g.vertex_of[f] != v)
                    throw std::invalid_argument("block crosses vertices");
                seen[f] += 1;
            }
        }
        if (2 * (ghost_genus(d) - 1) + g.valence(v) <= 0)
            throw std::invalid_argument("unstable ghost surface");
    }
    for (int f = 0; f < m; ++f)
        if (seen[f] != 1) throw std::invalid_argument("blocks do not partition the flags");
    if (!is_connected(g))
        throw std::invalid_argument("graph is not connected");
}

int next_in_block(const prestable_graph& g, int f) {
    const auto& d = g.vdata[g.vertex_of[f]];
    for (const auto& b : d.blocks) {
        for (size_t i = 0; i < b.size(); ++i)
            if (b[i] == f) return b[(i + 1) % b.size()];
    }
    throw std::logic_error("flag missing from its vertex blocks");
}

boundary_data boundary_cycles(const prestable_graph& g) {
    boundary_data out;
    int m = g.flag_count();
    std::vector<char> used(m, 0);
    for (int s = 0; s < m; ++s) {
        if (used[s]) continue;
        std::vector<int> cyc;
        int f = s;
        do {
            used[f] = 1;
            cyc.push_back(f);
            f = next_in_block(g, g.sigma[f]);
        } while (f != s);
        out.cycles.push_back(cyc);
    }
    out.nu = (int)out.cycles.size();
    for (const auto& d : g.vdata) out.nu += d.beta;
    return out;
}

int prestable_nu(const prestable_graph& g) { return boundary_cycles(g).nu; }

int prestable_genus(const prestable_graph& g) {
    int chi = -g.num_edges();
    for (const auto& d : g.vdata) chi += surface_euler(d);
    int nu = prestable_nu(g);
    int twice = 2 - chi - nu;
    if (twice < 0 || twice % 2 != 0)
        throw std::logic_error("euler bookkeeping broke");
    return twice / 2;
}

bool in_family(const prestable_graph& g, family fam) {
    switch (fam) {
        case family::ass_bar:
            return true;
        case family::kass:
            for (const auto& d : g.vdata)
                if (d.beta != 0) return false;
            return true;
        case family::rass:
            for (const auto& d : g.vdata)
                if (d.gamma != 0) return false;
            return true;
        case family::krass:
            for (const auto& d : g.vdata)
                if (d.gamma != 0 || d.beta != 0) return false;
            return true;
        case family::ass_underline:
            for (const auto& d : g.vdata)
                if (d.gamma != 0 || d.beta != 0 || d.blocks.size() != 1) return false;
            return true;
        default:
            throw std::invalid_argument("not a ribbon family");
    }
}

comm_graph underlying_comm(const prestable_graph& g) {
    comm_graph c;
    c.num_vertices = g.num_vertices;
    c.vertex_of = g.vertex_of;
    c.sigma = g.sigma;
    for (const auto& d : g.vdata) c.genus.push_back(ghost_genus(d));
    return c;
}

int circle_count(const prestable_graph& g) {
    int n = 0;
    for (const auto& d : g.vdata) n += (int)d.blocks.size() + d.beta;
    return n;
}

int circle_offset(const prestable_graph& g, int v) {
    int n = 0;
    for (int w = 0; w < v; ++w) n += (int)g.vdata[w].blocks.size() + g.vdata[w].beta;
    return n;
}

int circle_of_flag(const prestable_graph& g, int f) {
    int v = g.vertex_of[f];
    const auto& d = g.vdata[v];
    for (size_t i = 0; i < d.blocks.size(); ++i)
        for (int x : d.blocks[i])
            if (x == f) return circle_offset(g, v) + (int)i;
    throw std::logic_error("flag missing from its vertex blocks");
}

namespace {

// rotate the cyclic word so that the given flag sits last / first
std::vector<int> rotate_to_last(const std::vector<int>& b, int f) {
    size_t p = std::find(b.begin(), b.end(), f) - b.begin();
    std::vector<int> out;
    for (size_t i = 1; i <= b.size(); ++i) out.push_back(b[(p + i) % b.size()]);
    return out; // ends with f
}

std::vector<int> rotate_to_first(const std::vector<int>& b, int f) {
    size_t p = std::find(b.begin(), b.end(), f) - b.begin();
    std::vector<int> out;
    for (size_t i = 0; i < b.size(); ++i) out.push_back(b[(p + i) % b.size()]);
    return out; // starts with f
}

int block_index_of(const prestable_vertex& d, int f) {
    for (size_t i = 0; i < d.blocks.size(); ++i)
        for (int x : d.blocks[i])
            if (x == f) return (int)i;
    return -1;
}

int solve_gamma(int chi, int beta, int k) {
    int twice = 2 - beta - k - chi;
    if (twice < 0 || twice % 2 != 0)
        throw std::logic_error("euler bookkeeping broke in contraction");
    return twice / 2;
}

} // namespace

ribbon_contraction contract_ribbon_edge(const prestable_graph& g, int flag) {
    int ht = std::min(flag, g.sigma[flag]); // tail
    int hh = std::max(flag, g.sigma[flag]); // head
    int u = g.vertex_of[ht], w = g.vertex_of[hh];
    int m = g.flag_count();

    ribbon_contraction out;
    out.flag_map.assign(m, -1);
    int nf = 0;
    for (int f = 0; f < m; ++f)
        if (f != ht && f != hh) out.flag_map[f] = nf++;
    auto mapped = [&](const std::vector<int>& word) {
        std::vector<int> r;
        for (int f : word)
            if (out.flag_map[f] >= 0) r.push_back(out.flag_map[f]);
        return r;
    };
    out.tail_circle = circle_of_flag(g, ht);
    out.head_circle = circle_of_flag(g, hh);

    prestable_graph& r = out.result;
    // circle provenance is assembled per result vertex as (origin id) lists,
    // blocks first and the unmarked circles behind them
    std::vector<std::vector<int>> block_origin, free_origin;

    if (u != w) {
        out.kind = 0;
        int lo = std::min(u, w), hi = std::max(u, w);
        out.vertex_map.resize(g.num_vertices);
        for (int v = 0; v < g.num_vertices; ++v)
            out.vertex_map[v] = (v == hi) ? lo : (v > hi ? v - 1 : v);
        r.num_vertices = g.num_vertices - 1;
        block_origin.resize(r.num_vertices);
        free_origin.resize(r.num_vertices);
        r.vdata.resize(r.num_vertices);

        const auto& du = g.vdata[u];
        const auto& dw = g.vdata[w];
        int pu = block_index_of(du, ht);
        int pw = block_index_of(dw, hh);
        std::vector<int> tail_word = rotate_to_last(du.blocks[pu], ht);
        tail_word.pop_back();
        std::vector<int> head_word = rotate_to_first(dw.blocks[pw], hh);
        head_word.erase(head_word.begin());
        std::vector<int> spliced = tail_word;
        spliced.insert(spliced.end(), head_word.begin(), head_word.end());

        prestable_vertex md;
        std::vector<int> borig, forig;
        // tail vertex blocks with the splice in place of the tail block
        for (size_t i = 0; i < du.blocks.size(); ++i) {
            if ((int)i == pu) {
                if (!spliced.empty()) {
                    md.blocks.push_back(mapped(spliced));
                    borig.push_back(circle_offset(g, u) + (int)i);
                }
            } else {
                md.blocks.push_back(mapped(du.blocks[i]));
                borig.push_back(circle_offset(g, u) + (int)i);
            }
        }
        for (size_t i = 0; i < dw.blocks.size(); ++i) {
            if ((int)i == pw) continue;
            md.blocks.push_back(mapped(dw.blocks[i]));
            borig.push_back(circle_offset(g, w) + (int)i);
        }
        md.beta = du.beta + dw.beta;
        for (int i = 0; i < du.beta; ++i)
            forig.push_back(circle_offset(g, u) + (int)du.blocks.size() + i);
        for (int i = 0; i < dw.beta; ++i)
            forig.push_back(circle_offset(g, w) + (int)dw.blocks.size() + i);
        if (spliced.empty()) {
            md.beta += 1;
            forig.push_back(circle_offset(g, u) + pu);
        }
        md.gamma = solve_gamma(surface_euler(du) + surface_euler(dw) - 1, md.beta,
                               (int)md.blocks.size());
        r.vdata[lo] = md;
        block_origin[lo] = borig;
        free_origin[lo] = forig;
        out.consumed_circle = circle_offset(g, w) + pw;

        for (int v = 0; v < g.num_vertices; ++v) {
            if (v == u || v == w) continue;
            int nv = out.vertex_map[v];
            prestable_vertex dd;
            dd.gamma = g.vdata[v].gamma;
            dd.beta = g.vdata[v].beta;
            for (size_t i = 0; i < g.vdata[v].blocks.size(); ++i) {
                dd.blocks.push_back(mapped(g.vdata[v].blocks[i]));
                block_origin[nv].push_back(circle_offset(g, v) + (int)i);
            }
            for (int i = 0; i < dd.beta; ++i)
                free_origin[nv].push_back(circle_offset(g, v) +
                                          (int)g.vdata[v].blocks.size() + i);
            r.vdata[nv] = dd;
        }
    } else {
        out.vertex_map.resize(g.num_vertices);
        std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
        r.num_vertices = g.num_vertices;
        block_origin.resize(r.num_vertices);
        free_origin.resize(r.num_vertices);
        r.vdata.resize(r.num_vertices);

        const auto& du = g.vdata[u];
        int p = block_index_of(du, ht);
        int q = block_index_of(du, hh);
        prestable_vertex md;
        std::vector<int> borig, forig;
        if (p != q) {
            out.kind = 1;
            std::vector<int> tail_word = rotate_to_last(du.blocks[p], ht);
            tail_word.pop_back();
            std::vector<int> head_word = rotate_to_first(du.blocks[q], hh);
            head_word.erase(head_word.begin());
            std::vector<int> spliced = tail_word;
            spliced.insert(spliced.end(), head_word.begin(), head_word.end());
            for (size_t i = 0; i < du.blocks.size(); ++i) {
                if ((int)i == q) continue;
                if ((int)i == p) {
                    if (!spliced.empty()) {
                        md.blocks.push_back(mapped(spliced));
                        borig.push_back(circle_offset(g, u) + (int)i);
                    }
                } else {
                    md.blocks.push_back(mapped(du.blocks[i]));
                    borig.push_back(circle_offset(g, u) + (int)i);
                }
            }
            md.beta = du.beta;
            if (spliced.empty()) {
                md.beta += 1;
                forig.push_back(circle_offset(g, u) + p);
            }
            out.consumed_circle = circle_offset(g, u) + q;
        } else {
            out.kind = 2;
            // split the cyclic word (ht A1 hh A2) into the two arcs
            std::vector<int> word = rotate_to_first(du.blocks[p], ht);
            size_t cut = std::find(word.begin(), word.end(), hh) - word.begin();
            std::vector<int> arc1(word.begin() + 1, word.begin() + cut);
            std::vector<int> arc2(word.begin() + cut + 1, word.end());
            int extra_free = 0;
            for (size_t i = 0; i < du.blocks.size(); ++i) {
                if ((int)i == p) {
                    if (!arc1.empty()) {
                        md.blocks.push_back(mapped(arc1));
                        borig.push_back(circle_offset(g, u) + (int)i);
                    } else {
                        ++extra_free;
                    }
                    if (!arc2.empty()) {
                        md.blocks.push_back(mapped(arc2));
                        borig.push_back(-1);
                    } else {
                        ++extra_free;
                    }
                } else {
                    md.blocks.push_back(mapped(du.blocks[i]));
                    borig.push_back(circle_offset(g, u) + (int)i);
                }
            }
            md.beta = du.beta + extra_free;
            if (arc1.empty()) forig.push_back(circle_offset(g, u) + p);
            if (arc2.empty()) forig.push_back(-1);
        }
        for (int i = 0; i < du.beta; ++i)
            forig.push_back(circle_offset(g, u) + (int)du.blocks.size() + i);
        md.gamma = solve_gamma(surface_euler(du) - 1, md.beta, (int)md.blocks.size());
        r.vdata[u] = md;
        block_origin[u] = borig;
        free_origin[u] = forig;

        for (int v = 0; v < g.num_vertices; ++v) {
            if (v == u) continue;
            prestable_vertex dd;
            dd.gamma = g.vdata[v].gamma;
            dd.beta = g.vdata[v].beta;
            for (size_t i = 0; i < g.vdata[v].blocks.size(); ++i) {
                dd.blocks.push_back(mapped(g.vdata[v].blocks[i]));
                block_origin[v].push_back(circle_offset(g, v) + (int)i);
            }
            for (int i = 0; i < dd.beta; ++i)
                free_origin[v].push_back(circle_offset(g, v) +
                                         (int)g.vdata[v].blocks.size() + i);
            r.vdata[v] = dd;
        }
    }

    r.vertex_of.assign(nf, -1);
    r.sigma.assign(nf, -1);
    for (int f = 0; f < m; ++f) {
        if (out.flag_map[f] < 0) continue;
        r.vertex_of[out.flag_map[f]] = out.vertex_map[g.vertex_of[f]];
        r.sigma[out.flag_map[f]] = out.flag_map[g.sigma[f]];
    }

    // flatten circle provenance and locate the special circles
    for (int v = 0; v < r.num_vertices; ++v) {
        for (int o : block_origin[v]) out.circle_origin.push_back(o);
        for (int o : free_origin[v]) out.circle_origin.push_back(o);
    }
    for (size_t c = 0; c < out.circle_origin.size(); ++c) {
        if (out.circle_origin[c] == out.tail_circle) out.spliced_circle = (int)c;
        if (out.kind == 2 && out.circle_origin[c] == -1) out.created_circle = (int)c;
    }
    return out;
}

namespace {

// all ways to arrange the given flags into non-empty cyclic words, grouped by
// word count.  insertion order makes each word lead with its smallest flag.
std::vector<std::vector<std::vector<std::vector<int>>>> cyclic_partitions(
    const std::vector<int>& flags) {
    std::vector<std::vector<std::vector<std::vector<int>>>> out(flags.size() + 1);
    std::vector<std::vector<int>> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == flags.size()) {
            out[cur.size()].push_back(cur);
            return;
        }
        int f = flags[i];
        // index access: deeper levels grow `cur` and may reallocate it
        for (size_t bi = 0; bi < cur.size(); ++bi)
            for (size_t j = 0; j < cur[bi].size(); ++j) {
                cur[bi].insert(cur[bi].begin() + j + 1, f);
                rec(i + 1);
                cur[bi].erase(cur[bi].begin() + j + 1);
            }
        cur.push_back({f});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

// admissible (gamma, beta) pairs for a vertex of skeleton genus s split into
// k blocks: 2 gamma + beta + k - 1 = s, at least one boundary circle
std::vector<std::pair<int, int>> vertex_decorations(family fam, int s, int k) {
    std::vector<std::pair<int, int>> out;
    int rest = s + 1 - k;
    if (rest < 0) return out;
    for (int gam = 0; 2 * gam <= rest; ++gam) {
        int bet = rest - 2 * gam;
        if (bet + k < 1) continue;
        bool ok = true;
        switch (fam) {
            case family::ass_underline: ok = !gam && !bet && k == 1; break;
            case family::kass: ok = !bet; break;
            case family::rass: ok = !gam; break;
            case family::krass: ok = !gam && !bet; break;
            case family::ass_bar: ok = true; break;
            default: throw std::invalid_argument("not a ribbon family");
        }
        if (ok) out.push_back({gam, bet});
    }
    return out;
}

} // namespace

std::vector<std::vector<prestable_graph>> enumerate_prestable_levels(int gamma, int nu,
                                                                     int max_edges,
                                                                     family fam) {
    std::vector<std::vector<prestable_graph>> levels(max_edges + 1);
    if (gamma < 0 || nu < 1 || max_edges < 0) return levels;
    int skeleton_genus = 2 * gamma + nu - 1;
    auto skeletons = enumerate_stable_levels(skeleton_genus, 0, max_edges, family::com_bar);
    for (int e = 0; e <= max_edges; ++e) {
        std::map<std::string, prestable_graph> found;
        for (const auto& c : skeletons[e]) {
            std::vector<std::vector<int>> at(c.num_vertices);
            for (int f = 0; f < c.flag_count(); ++f) at[c.vertex_of[f]].push_back(f);
            std::vector<std::vector<prestable_vertex>> choices(c.num_vertices);
            bool dead = false;
            for (int v = 0; v < c.num_vertices && !dead; ++v) {
                auto by_k = cyclic_partitions(at[v]);
                for (int k = 0; k < (int)by_k.size(); ++k) {
                    auto decs = vertex_decorations(fam, c.genus[v], k);
                    if (decs.empty()) continue;
                    for (const auto& blocks : by_k[k])
                        for (auto [gam, bet] : decs) {
                            prestable_vertex pv;
                            pv.gamma = gam;
                            pv.beta = bet;
                            pv.blocks = blocks;
                            choices[v].push_back(std::move(pv));
                        }
                }
                if (choices[v].empty()) dead = true;
            }
            if (dead) continue;
            std::vector<size_t> pick(c.num_vertices, 0);
            while (true) {
                prestable_graph g;
                g.num_vertices = c.num_vertices;
                g.vertex_of = c.vertex_of;
                g.sigma = c.sigma;
                for (int v = 0; v < c.num_vertices; ++v)
                    g.vdata.push_back(choices[v][pick[v]]);
                if (prestable_nu(g) == nu) {
                    if (prestable_genus(g) != gamma)
                        throw std::logic_error("decorated graph landed in wrong stratum");
                    auto cf = canonical_form(g);
                    found.emplace(cf.key, cf.canonical);
                }
                int v = 0;
                while (v < c.num_vertices && ++pick[v] == choices[v].size())
                    pick[v++] = 0;
                if (v == c.num_vertices) break;
            }
        }
        for (auto& [key, g] : found) levels[e].push_back(std::move(g));
    }
    return levels;
}

std::vector<prestable_graph> enumerate_prestable(int gamma, int nu, int edge_count,
                                                 family fam) {
    if (edge_count < 0) return {};
    auto levels = enumerate_prestable_levels(gamma, nu, edge_count, fam);
    return std::move(levels[edge_count]);
}

prestable_graph ribbon_from_blocks(int num_vertices,
                                   const std::vector<std::vector<std::vector<int>>>& blocks,
                                   const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<std::pair<int, int>>& defects) {
    prestable_graph g;
    g.num_vertices = num_vertices;
    g.vdata.resize(num_vertices);
    int m = 0;
    for (int v = 0; v < num_vertices; ++v) {
        g.vdata[v].blocks = blocks[v];
        for (const auto& b : blocks[v]) m += (int)b.size();
    }
    g.vertex_of.assign(m, -1);
    g.sigma.assign(m, -1);
    for (int v = 0; v < num_vertices; ++v)
        for (const auto& b : blocks[v])
            for (int f : b) g.vertex_of[f] = v;
    for (auto [a, b] : edges) {
        g.sigma[a] = b;
        g.sigma[b] = a;
    }
    for (size_t v = 0; v < defects.size(); ++v) {
        g.vdata[v].gamma = defects[v].first;
        g.vdata[v].beta = defects[v].second;
    }
    return g;
}

} // namespace gcx
