#include "gcx/canon.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcx {

namespace {

struct ir_search {
    const colored_digraph& g;
    std::vector<std::vector<std::pair<int, int>>> in; // reverse arcs
    int n;

    bool have_best = false;
    std::vector<int64_t> best_cert;
    std::vector<int> best_lab;
    std::vector<std::vector<int>> equal_labs; // labelings reaching the best certificate

    explicit ir_search(const colored_digraph& gg) : g(gg), n(gg.size()) {
        in.resize(n);
        for (int a = 0; a < n; ++a)
            for (auto [b, c] : g.out[a]) in[b].push_back({a, c});
    }

    // 1-WL style refinement respecting arc colors and directions.
    // new color ranks extend the order of the old ones.
    void refine(std::vector<int>& color) const {
        using sig_t = std::vector<int64_t>;
        std::vector<sig_t> sig(n);
        std::vector<int64_t> buf;
        for (;;) {
            for (int v = 0; v < n; ++v) {
                sig_t& s = sig[v];
                s.clear();
                s.push_back(color[v]);
                buf.clear();
                for (auto [t, c] : g.out[v]) buf.push_back((int64_t)c << 32 | (uint32_t)color[t]);
                std::sort(buf.begin(), buf.end());
                s.push_back(-1);
                s.insert(s.end(), buf.begin(), buf.end());
                buf.clear();
                for (auto [t, c] : in[v]) buf.push_back((int64_t)c << 32 | (uint32_t)color[t]);
                std::sort(buf.begin(), buf.end());
                s.push_back(-2);
                s.insert(s.end(), buf.begin(), buf.end());
            }
            std::vector<int> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(),
                      [&](int a, int b) { return sig[a] < sig[b]; });
            std::vector<int> nc(n);
            int classes = 0;
            for (int i = 0; i < n; ++i) {
                if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++classes;
                nc[idx[i]] = classes;
            }
            bool changed = false;
            for (int v = 0; v < n; ++v)
                if (nc[v] != color[v]) { changed = true; break; }
            color.swap(nc);
            if (!changed) return;
        }
    }

    std::vector<int64_t> leaf_certificate(const std::vector<int>& lab) const {
        // dump original colors and out-adjacency under the labeling
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[lab[v]] = v;
        std::vector<int64_t> cert;
        cert.push_back(n);
        for (int p = 0; p < n; ++p) cert.push_back(g.color[order[p]]);
        std::vector<int64_t> row;
        for (int p = 0; p < n; ++p) {
            row.clear();
            for (auto [t, c] : g.out[order[p]])
                row.push_back((int64_t)c << 32 | (uint32_t)lab[t]);
            std::sort(row.begin(), row.end());
            cert.push_back(-1);
            cert.insert(cert.end(), row.begin(), row.end());
        }
        return cert;
    }

    void visit_leaf(const std::vector<int>& color) {
        std::vector<int> lab(n);
        // discrete coloring: color ranks are 0..n-1 already
        for (int v = 0; v < n; ++v) lab[v] = color[v];
        auto cert = leaf_certificate(lab);
        if (!have_best || cert < best_cert) {
            have_best = true;
            best_cert = std::move(cert);
            best_lab = lab;
            equal_labs.clear();
            equal_labs.push_back(best_lab);
        } else if (cert == best_cert) {
            equal_labs.push_back(lab);
        }
    }

    void search(std::vector<int> color) {
        refine(color);
        int target = -1, target_color = 0;
        std::vector<int> count(n, 0);
        for (int v = 0; v < n; ++v) ++count[color[v]];
        for (int v = 0; v < n; ++v)
            if (count[color[v]] > 1 && (target < 0 || color[v] < target_color)) {
                target = v;
                target_color = color[v];
            }
        if (target < 0) {
            visit_leaf(color);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (color[v] != target_color) continue;
            auto branch = color;
            branch[v] = n; // fresh maximal color, refined into rank order next pass
            search(std::move(branch));
        }
    }
};

} // namespace

digraph_canon canonicalize_digraph(const colored_digraph& g) {
    ir_search s(g);
    if (g.size() == 0) {
        digraph_canon r;
        r.certificate = {0};
        r.aut.push_back({});
        return r;
    }
    s.search(g.color);
    digraph_canon r;
    r.lab = s.best_lab;
    r.certificate = std::move(s.best_cert);
    std::vector<int> best_order(s.n);
    for (int v = 0; v < s.n; ++v) best_order[r.lab[v]] = v;
    std::set<std::vector<int>> uniq;
    for (const auto& lab : s.equal_labs) {
        std::vector<int> phi(s.n);
        for (int v = 0; v < s.n; ++v) phi[v] = best_order[lab[v]];
        uniq.insert(phi);
    }
    r.aut.assign(uniq.begin(), uniq.end());
    return r;
}

// ---- commutative graphs ----

namespace {

// node layout: flags 0..m-1, then vertices
colored_digraph encode_comm(const comm_graph& g) {
    int m = g.flag_count();
    colored_digraph d;
    for (int f = 0; f < m; ++f) d.add_node(0);
    for (int v = 0; v < g.num_vertices; ++v) d.add_node(2000000 + g.genus[v]);
    for (int k = 0; k < g.num_legs(); ++k) d.color[g.legs[k]] = 1000000 + k + 1;
    for (int f = 0; f < m; ++f) {
        d.add_arc(f, m + g.vertex_of[f], 0);
        if (g.sigma[f] != f) d.add_arc(f, g.sigma[f], 1);
    }
    return d;
}

} // namespace

comm_graph relabel(const comm_graph& g, const std::vector<int>& flag_perm,
                   const std::vector<int>& vertex_perm) {
    comm_graph h;
    h.num_vertices = g.num_vertices;
    h.genus.assign(g.num_vertices, 0);
    for (int v = 0; v < g.num_vertices; ++v) h.genus[vertex_perm[v]] = g.genus[v];
    int m = g.flag_count();
    h.vertex_of.assign(m, -1);
    h.sigma.assign(m, -1);
    for (int f = 0; f < m; ++f) {
        h.vertex_of[flag_perm[f]] = vertex_perm[g.vertex_of[f]];
        h.sigma[flag_perm[f]] = flag_perm[g.sigma[f]];
    }
    for (int f : g.legs) h.legs.push_back(flag_perm[f]);
    return h;
}

std::vector<int> induced_vertex_map(const comm_graph& g, const comm_graph& h,
                                    const std::vector<int>& flag_perm) {
    std::vector<int> vm(g.num_vertices, -1);
    for (int f = 0; f < g.flag_count(); ++f) {
        int a = g.vertex_of[f], b = h.vertex_of[flag_perm[f]];
        if (vm[a] >= 0 && vm[a] != b)
            throw std::invalid_argument("flag map does not respect vertices");
        vm[a] = b;
    }
    // flagless vertices: match leftovers by genus, in order
    std::vector<char> used(h.num_vertices, 0);
    for (int v = 0; v < g.num_vertices; ++v)
        if (vm[v] >= 0) used[vm[v]] = 1;
    for (int v = 0; v < g.num_vertices; ++v) {
        if (vm[v] >= 0) continue;
        for (int w = 0; w < h.num_vertices; ++w)
            if (!used[w] && h.genus[w] == g.genus[v]) {
                vm[v] = w;
                used[w] = 1;
                break;
            }
        if (vm[v] < 0) throw std::invalid_argument("vertex map has no completion");
    }
    return vm;
}

std::string serialize(const comm_graph& g) {
    std::ostringstream os;
    os << "halfedges " << g.flag_count() << "\n";
    os << "edges";
    for (auto [a, b] : g.edge_list()) os << " " << a << "-" << b;
    os << "\n";
    os << "vertices";
    for (int v = 0; v < g.num_vertices; ++v) {
        os << " ";
        bool first = true;
        for (int f = 0; f < g.flag_count(); ++f)
            if (g.vertex_of[f] == v) {
                if (!first) os << ",";
                os << f;
                first = false;
            }
        if (first) os << "-";
    }
    os << "\n";
    os << "genus";
    for (int v = 0; v < g.num_vertices; ++v) os << " " << g.genus[v];
    os << "\n";
    os << "legs";
    for (int f : g.legs) os << " " << f;
    os << "\n";
    return os.str();
}

comm_canon canonical_form(const comm_graph& g) {
    colored_digraph d = encode_comm(g);
    digraph_canon dc = canonicalize_digraph(d);
    int m = g.flag_count();

    comm_canon out;
    // flag and vertex ranks inside the canonical node order
    std::vector<std::pair<int, int>> fpos, vpos;
    for (int f = 0; f < m; ++f) fpos.push_back({dc.lab[f], f});
    for (int v = 0; v < g.num_vertices; ++v) vpos.push_back({dc.lab[m + v], v});
    std::sort(fpos.begin(), fpos.end());
    std::sort(vpos.begin(), vpos.end());
    out.flag_relabel.assign(m, -1);
    out.vertex_relabel.assign(g.num_vertices, -1);
    for (int i = 0; i < m; ++i) out.flag_relabel[fpos[i].second] = i;
    for (int i = 0; i < g.num_vertices; ++i) out.vertex_relabel[vpos[i].second] = i;

    out.canonical = relabel(g, out.flag_relabel, out.vertex_relabel);
    out.key = serialize(out.canonical);

    std::set<std::pair<std::vector<int>, std::vector<int>>> uniq;
    for (const auto& phi : dc.aut) {
        std::vector<int> fa(m), va(g.num_vertices);
        for (int f = 0; f < m; ++f)
            fa[out.flag_relabel[f]] = out.flag_relabel[phi[f]];
        for (int v = 0; v < g.num_vertices; ++v)
            va[out.vertex_relabel[v]] = out.vertex_relabel[phi[m + v] - m];
        uniq.insert({fa, va});
    }
    for (const auto& [fa, va] : uniq) {
        out.flag_auts.push_back(fa);
        out.vertex_auts.push_back(va);
    }
    return out;
}

std::string canonical_key(const comm_graph& g) { return canonical_form(g).key; }

// ---- two-colored graphs ----

bv_graph relabel(const bv_graph& b, const std::vector<int>& flag_perm,
                 const std::vector<int>& vertex_perm) {
    bv_graph out;
    out.g = relabel(b.g, flag_perm, vertex_perm);
    out.white.assign(b.white.size(), 0);
    for (int f = 0; f < (int)b.white.size(); ++f)
        out.white[flag_perm[f]] = b.white[f];
    return out;
}

std::string serialize(const bv_graph& b) {
    std::ostringstream os;
    os << serialize(b.g);
    os << "white";
    for (auto [x, y] : b.g.edge_list())
        if (b.white[x]) os << " " << x << "-" << y;
    os << "\n";
    return os.str();
}

bv_canon canonical_form(const bv_graph& b) {
    colored_digraph d = encode_comm(b.g);
    int m = b.g.flag_count();
    for (int f = 0; f < m; ++f)
        if (b.white[f]) d.color[f] += 5;
    digraph_canon dc = canonicalize_digraph(d);

    bv_canon out;
    std::vector<std::pair<int, int>> fpos, vpos;
    for (int f = 0; f < m; ++f) fpos.push_back({dc.lab[f], f});
    for (int v = 0; v < b.g.num_vertices; ++v) vpos.push_back({dc.lab[m + v], v});
    std::sort(fpos.begin(), fpos.end());
    std::sort(vpos.begin(), vpos.end());
    out.flag_relabel.assign(m, -1);
    out.vertex_relabel.assign(b.g.num_vertices, -1);
    for (int i = 0; i < m; ++i) out.flag_relabel[fpos[i].second] = i;
    for (int i = 0; i < b.g.num_vertices; ++i) out.vertex_relabel[vpos[i].second] = i;

    out.canonical = relabel(b, out.flag_relabel, out.vertex_relabel);
    out.key = serialize(out.canonical);

    std::set<std::pair<std::vector<int>, std::vector<int>>> uniq;
    for (const auto& phi : dc.aut) {
        std::vector<int> fa(m), va(b.g.num_vertices);
        for (int f = 0; f < m; ++f)
            fa[out.flag_relabel[f]] = out.flag_relabel[phi[f]];
        for (int v = 0; v < b.g.num_vertices; ++v)
            va[out.vertex_relabel[v]] = out.vertex_relabel[phi[m + v] - m];
        uniq.insert({fa, va});
    }
    for (const auto& [fa, va] : uniq) {
        out.flag_auts.push_back(fa);
        out.vertex_auts.push_back(va);
    }
    return out;
}

namespace {

// node layout: flags 0..m-1, then vertices.  arc colors: 0 membership,
// 1 sigma, 2 next-in-block (the cyclic order, one arc per flag)
colored_digraph encode_prestable(const prestable_graph& g) {
    int m = g.flag_count();
    colored_digraph d;
    for (int f = 0; f < m; ++f) d.add_node(0);
    for (int v = 0; v < g.num_vertices; ++v)
        d.add_node(3000000 + g.vdata[v].gamma * 1000 + g.vdata[v].beta);
    for (int f = 0; f < m; ++f) {
        d.add_arc(f, m + g.vertex_of[f], 0);
        d.add_arc(f, g.sigma[f], 1);
        d.add_arc(f, next_in_block(g, f), 2);
    }
    return d;
}

} // namespace

prestable_graph relabel(const prestable_graph& g, const std::vector<int>& flag_perm,
                        const std::vector<int>& vertex_perm) {
    prestable_graph h;
    h.num_vertices = g.num_vertices;
    h.vdata.resize(g.num_vertices);
    int m = g.flag_count();
    h.vertex_of.assign(m, -1);
    h.sigma.assign(m, -1);
    for (int f = 0; f < m; ++f) {
        h.vertex_of[flag_perm[f]] = vertex_perm[g.vertex_of[f]];
        h.sigma[flag_perm[f]] = flag_perm[g.sigma[f]];
    }
    for (int v = 0; v < g.num_vertices; ++v) {
        prestable_vertex pv;
        pv.gamma = g.vdata[v].gamma;
        pv.beta = g.vdata[v].beta;
        for (const auto& blk : g.vdata[v].blocks) {
            std::vector<int> nb;
            for (int f : blk) nb.push_back(flag_perm[f]);
            pv.blocks.push_back(std::move(nb));
        }
        h.vdata[vertex_perm[v]] = std::move(pv);
    }
    return h;
}

prestable_graph normalize_blocks(const prestable_graph& g) {
    prestable_graph h = g;
    for (auto& pv : h.vdata) {
        for (auto& blk : pv.blocks) {
            auto it = std::min_element(blk.begin(), blk.end());
            std::rotate(blk.begin(), it, blk.end());
        }
        std::sort(pv.blocks.begin(), pv.blocks.end(),
                  [](const auto& a, const auto& b) { return a[0] < b[0]; });
    }
    return h;
}

std::string serialize(const prestable_graph& g) {
    std::ostringstream os;
    os << "ribbon\n";
    os << "halfedges " << g.flag_count() << "\n";
    os << "edges";
    for (auto [a, b] : g.edge_list()) os << " " << a << "-" << b;
    os << "\n";
    for (int v = 0; v < g.num_vertices; ++v) {
        const auto& pv = g.vdata[v];
        os << "vertex " << v << " gamma " << pv.gamma << " beta " << pv.beta << " blocks";
        if (pv.blocks.empty()) os << " -";
        for (const auto& blk : pv.blocks) {
            os << " (";
            for (size_t i = 0; i < blk.size(); ++i) os << (i ? "," : "") << blk[i];
            os << ")";
        }
        os << "\n";
    }
    return os.str();
}

prestable_canon canonical_form(const prestable_graph& g) {
    colored_digraph d = encode_prestable(g);
    digraph_canon dc = canonicalize_digraph(d);
    int m = g.flag_count();

    prestable_canon out;
    std::vector<std::pair<int, int>> fpos, vpos;
    for (int f = 0; f < m; ++f) fpos.push_back({dc.lab[f], f});
    for (int v = 0; v < g.num_vertices; ++v) vpos.push_back({dc.lab[m + v], v});
    std::sort(fpos.begin(), fpos.end());
    std::sort(vpos.begin(), vpos.end());
    out.flag_relabel.assign(m, -1);
    out.vertex_relabel.assign(g.num_vertices, -1);
    for (int i = 0; i < m; ++i) out.flag_relabel[fpos[i].second] = i;
    for (int i = 0; i < g.num_vertices; ++i) out.vertex_relabel[vpos[i].second] = i;

    out.canonical = normalize_blocks(relabel(g, out.flag_relabel, out.vertex_relabel));
    out.key = serialize(out.canonical);

    std::set<std::pair<std::vector<int>, std::vector<int>>> uniq;
    for (const auto& phi : dc.aut) {
        std::vector<int> fa(m), va(g.num_vertices);
        for (int f = 0; f < m; ++f)
            fa[out.flag_relabel[f]] = out.flag_relabel[phi[f]];
        for (int v = 0; v < g.num_vertices; ++v)
            va[out.vertex_relabel[v]] = out.vertex_relabel[phi[m + v] - m];
        uniq.insert({fa, va});
    }
    for (const auto& [fa, va] : uniq) {
        out.flag_auts.push_back(fa);
        out.vertex_auts.push_back(va);
    }
    return out;
}

std::string canonical_key(const prestable_graph& g) { return canonical_form(g).key; }

} // namespace gcx
