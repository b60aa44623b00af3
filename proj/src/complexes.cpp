#include "gcx/complexes.hpp"

#include <stdexcept>

#include "gcx/canon.hpp"
#include "gcx/orient.hpp"

namespace gcx {

std::vector<int> graph_complex::dims() const {
    std::vector<int> out;
    for (const auto& ks : keys) out.push_back((int)ks.size());
    return out;
}

int max_edges_comm(int genus, int legs) {
    // trivalent graphs saturate the count
    return std::max(0, 3 * genus - 3 + legs);
}

int max_edges_ribbon(int gamma, int nu) {
    return std::max(0, 6 * gamma + 3 * nu - 6);
}

namespace {

bool comm_in_family(const comm_graph& g, family fam) {
    if (fam == family::com_bar) return true;
    for (int gv : g.genus)
        if (gv != 0) return false;
    return true;
}

void build_comm(graph_complex& gc, int max_edges) {
    auto levels = enumerate_stable_levels(gc.a, gc.b, max_edges, gc.fam);
    gc.comm_basis.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e)
        for (auto& g : levels[e]) {
            auto cf = canonical_form(g);
            if (!orientation_vanishes(cf, gc.twist))
                gc.comm_basis[e].push_back(std::move(g));
        }
    gc.keys.resize(max_edges + 1);
    gc.index.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e)
        for (const auto& g : gc.comm_basis[e]) {
            gc.index[e][serialize(g)] = (int)gc.keys[e].size();
            gc.keys[e].push_back(serialize(g));
        }

    gc.boundary.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e) {
        auto& mat = gc.boundary[e];
        mat.rows = e ? (int)gc.keys[e - 1].size() : 0;
        mat.cols = (int)gc.keys[e].size();
        mat.col.resize(mat.cols);
        if (!e) continue;
        for (int j = 0; j < mat.cols; ++j) {
            const auto& g = gc.comm_basis[e][j];
            for (int f = 0; f < g.flag_count(); ++f) {
                if (g.sigma[f] <= f) continue;
                auto c = contract_edge(g, f);
                if (!comm_in_family(c.result, gc.fam)) continue;
                auto cf = canonical_form(c.result);
                auto it = gc.index[e - 1].find(cf.key);
                if (it == gc.index[e - 1].end()) {
                    if (orientation_vanishes(cf, gc.twist)) continue;
                    throw std::logic_error("boundary term missing from the basis");
                }
                int s = contraction_sign(g, c, f, gc.twist) *
                        orientation_sign(c.result, cf.canonical, cf.flag_relabel,
                                         gc.twist);
                mat.add(it->second, j, s);
            }
        }
    }
}

void build_ribbon(graph_complex& gc, int max_edges) {
    auto levels = enumerate_prestable_levels(gc.a, gc.b, max_edges, gc.fam);
    gc.ribbon_basis.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e)
        for (auto& g : levels[e]) {
            auto cf = canonical_form(g);
            if (!orientation_vanishes(cf, gc.twist))
                gc.ribbon_basis[e].push_back(std::move(g));
        }
    gc.keys.resize(max_edges + 1);
    gc.index.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e)
        for (const auto& g : gc.ribbon_basis[e]) {
            gc.index[e][serialize(g)] = (int)gc.keys[e].size();
            gc.keys[e].push_back(serialize(g));
        }

    gc.boundary.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e) {
        auto& mat = gc.boundary[e];
        mat.rows = e ? (int)gc.keys[e - 1].size() : 0;
        mat.cols = (int)gc.keys[e].size();
        mat.col.resize(mat.cols);
        if (!e) continue;
        for (int j = 0; j < mat.cols; ++j) {
            const auto& g = gc.ribbon_basis[e][j];
            for (int f = 0; f < g.flag_count(); ++f) {
                if (g.sigma[f] <= f) continue;
                auto c = contract_ribbon_edge(g, f);
                if (!in_family(c.result, gc.fam)) continue;
                auto cf = canonical_form(c.result);
                auto it = gc.index[e - 1].find(cf.key);
                if (it == gc.index[e - 1].end()) {
                    if (orientation_vanishes(cf, gc.twist)) continue;
                    throw std::logic_error("boundary term missing from the basis");
                }
                int s = contraction_sign(g, c, f, gc.twist) *
                        orientation_sign(c.result, cf.canonical, cf.flag_relabel,
                                         gc.twist);
                mat.add(it->second, j, s);
            }
        }
    }
}

} // namespace

graph_complex build_complex(family fam, int twist, int a, int b, int max_edges) {
    if (twist != 0 && twist != 1) throw std::invalid_argument("twist must be 0 or 1");
    if (max_edges < 0) throw std::invalid_argument("negative edge cutoff");
    graph_complex gc;
    gc.fam = fam;
    gc.twist = twist;
    gc.a = a;
    gc.b = b;
    if (is_comm_family(fam))
        build_comm(gc, max_edges);
    else
        build_ribbon(gc, max_edges);
    return gc;
}

std::vector<int> bv_complex::dims() const {
    std::vector<int> out;
    for (const auto& ks : keys) out.push_back((int)ks.size());
    return out;
}

bv_complex build_bv_complex(int genus, int max_black) {
    if (max_black < 0) throw std::invalid_argument("negative edge cutoff");
    bv_complex bc;
    bc.genus = genus;
    bc.basis.resize(max_black + 1);
    bc.keys.resize(max_black + 1);
    bc.index.resize(max_black + 1);

    int total_max = max_edges_comm(genus, 0);
    auto levels = enumerate_stable_levels(genus, 0, total_max, family::com_bar);
    for (int te = 0; te <= total_max; ++te)
        for (const auto& g : levels[te]) {
            auto edges = g.edge_list();
            for (std::uint32_t mask = 0; mask < (1u << te); ++mask) {
                int black = te - __builtin_popcount(mask);
                if (black > max_black) continue;
                bv_graph b;
                b.g = g;
                b.white.assign(g.flag_count(), 0);
                for (int k = 0; k < te; ++k)
                    if (mask >> k & 1)
                        b.white[edges[k].first] = b.white[edges[k].second] = 1;
                auto cf = canonical_form(b);
                if (bc.index[black].count(cf.key)) continue;
                if (orientation_vanishes(cf)) continue;
                bc.index[black][cf.key] = (int)bc.keys[black].size();
                bc.keys[black].push_back(cf.key);
                bc.basis[black].push_back(std::move(cf.canonical));
            }
        }

    bc.boundary.resize(max_black + 1);
    for (int e = 0; e <= max_black; ++e) {
        auto& mat = bc.boundary[e];
        mat.rows = e ? (int)bc.keys[e - 1].size() : 0;
        mat.cols = (int)bc.keys[e].size();
        mat.col.resize(mat.cols);
        if (!e) continue;
        for (int j = 0; j < mat.cols; ++j) {
            const auto& b = bc.basis[e][j];
            for (int f = 0; f < b.g.flag_count(); ++f) {
                if (b.g.sigma[f] <= f || b.white[f]) continue;
                int psign = black_position_sign(b, f);

                auto c = contract_edge(b.g, f);
                bv_graph r;
                r.g = c.result;
                r.white.assign(c.result.flag_count(), 0);
                for (int x = 0; x < b.g.flag_count(); ++x)
                    if (c.flag_map[x] >= 0) r.white[c.flag_map[x]] = b.white[x];
                auto cf = canonical_form(r);
                auto it = bc.index[e - 1].find(cf.key);
                if (it != bc.index[e - 1].end()) {
                    int s = psign * orientation_sign(r, cf.canonical, cf.flag_relabel);
                    mat.add(it->second, j, s);
                } else if (!orientation_vanishes(cf)) {
                    throw std::logic_error("boundary term missing from the basis");
                }

                bv_graph w = b;
                w.white[f] = w.white[b.g.sigma[f]] = 1;
                auto cw = canonical_form(w);
                auto iw = bc.index[e - 1].find(cw.key);
                if (iw != bc.index[e - 1].end()) {
                    int s = psign * orientation_sign(w, cw.canonical, cw.flag_relabel);
                    mat.add(iw->second, j, s);
                } else if (!orientation_vanishes(cw)) {
                    throw std::logic_error("boundary term missing from the basis");
                }
            }
        }
    }
    return bc;
}

std::vector<int> dft_complex::dims() const {
    std::vector<int> out;
    for (const auto& ks : keys) out.push_back((int)ks.size());
    return out;
}

namespace {

std::string dft_key(const std::string& graph_key, std::uint32_t marks, int legs) {
    std::string k = graph_key;
    k += "marks";
    for (int l = 0; l < legs; ++l)
        if (marks >> l & 1) {
            k += " ";
            k += std::to_string(l + 1);
        }
    k += "\n";
    return k;
}

} // namespace

dft_complex build_dft_comm_complex(int genus, int legs, int max_edges) {
    if (legs < 1) throw std::invalid_argument("marked complexes need a leg");
    if (legs > 30) throw std::invalid_argument("too many legs for a mark word");
    if (2 * (genus - 1) + legs <= 0)
        throw std::invalid_argument("unstable genus and leg count");
    if (max_edges < 0) throw std::invalid_argument("negative edge cutoff");

    dft_complex dc;
    dc.genus = genus;
    dc.legs = legs;
    dc.basis.resize(max_edges + 1);
    dc.keys.resize(max_edges + 1);
    dc.index.resize(max_edges + 1);

    int solid_max = std::min(max_edges, max_edges_comm(genus, legs));
    auto levels = enumerate_stable_levels(genus, legs, solid_max, family::com_bar);
    for (int se = 0; se <= solid_max; ++se)
        for (const auto& g : levels[se]) {
            auto cf = canonical_form(g);
            if (orientation_vanishes(cf, 0)) continue;
            for (std::uint32_t marks = 0; marks < (1u << legs); ++marks) {
                int e = se + __builtin_popcount(marks);
                if (e > max_edges) continue;
                std::string key = dft_key(serialize(g), marks, legs);
                dc.index[e][key] = (int)dc.keys[e].size();
                dc.keys[e].push_back(std::move(key));
                dc.basis[e].push_back({g, marks});
            }
        }

    dc.boundary.resize(max_edges + 1);
    for (int e = 0; e <= max_edges; ++e) {
        auto& mat = dc.boundary[e];
        mat.rows = e ? (int)dc.keys[e - 1].size() : 0;
        mat.cols = (int)dc.keys[e].size();
        mat.col.resize(mat.cols);
        if (!e) continue;
        for (int j = 0; j < mat.cols; ++j) {
            const auto& el = dc.basis[e][j];
            const auto& g = el.g;
            for (int f = 0; f < g.flag_count(); ++f) {
                if (g.sigma[f] <= f) continue;
                auto c = contract_edge(g, f);
                auto cf = canonical_form(c.result);
                auto it = dc.index[e - 1].find(dft_key(cf.key, el.marks, legs));
                if (it == dc.index[e - 1].end()) {
                    if (orientation_vanishes(cf, 0)) continue;
                    throw std::logic_error("boundary term missing from the basis");
                }
                int s = contraction_sign(g, c, f, 0) *
                        orientation_sign(c.result, cf.canonical, cf.flag_relabel, 0);
                mat.add(it->second, j, s);
            }
            int solid = g.num_edges();
            int below = 0;
            for (int l = 0; l < legs; ++l) {
                if (!(el.marks >> l & 1)) continue;
                auto it = dc.index[e - 1].find(
                    dft_key(serialize(g), el.marks ^ (1u << l), legs));
                if (it == dc.index[e - 1].end())
                    throw std::logic_error("mark absorption left the basis");
                mat.add(it->second, j, (solid + below) % 2 ? -1 : 1);
                ++below;
            }
        }
    }
    return dc;
}

square_check check_d_squared(const std::vector<level_matrix>& boundary) {
    square_check out;
    for (int e = 2; e < (int)boundary.size(); ++e) {
        const auto& hi = boundary[e];
        const auto& lo = boundary[e - 1];
        for (int j = 0; j < hi.cols; ++j) {
            std::map<int, long long> acc;
            for (auto [i, v] : hi.col[j])
                for (auto [i2, v2] : lo.col[i]) acc[i2] += (long long)v * v2;
            for (auto [i2, total] : acc)
                if (total != 0) {
                    out.ok = false;
                    out.level = e;
                    out.source = j;
                    out.target = i2;
                    out.value = total;
                    return out;
                }
        }
    }
    return out;
}

square_check check_d_squared(const graph_complex& gc) {
    return check_d_squared(gc.boundary);
}

} // namespace gcx
