#include "gcx/amplitude.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "gcx/enumerate.hpp"

namespace gcx {

namespace {

int pow_sign(long long e) { return ((e % 2) + 2) % 2 ? -1 : 1; }

// plain circles joined by glue edges, the raw data behind expansion_graph
// and the state sum.  the glue flags are created per vertex: four per handle,
// two per window, two core stubs plus two satellite leads per extra block.
struct expansion {
    std::vector<std::vector<int>> words;            // circle -> flags in trace order
    std::vector<int> word_vertex;                   // circle -> source vertex
    std::vector<std::pair<int, int>> glue;          // copairing edges, construction order
    std::vector<std::vector<std::vector<int>>> blocks; // vertex -> block -> its flags
    int external = 0;
    int total = 0;
};

expansion expand(const prestable_graph& g, int model) {
    expansion ex;
    ex.external = g.flag_count();
    ex.total = ex.external;
    ex.blocks.resize(g.num_vertices);
    auto fresh = [&ex]() { return ex.total++; };
    for (int v = 0; v < g.num_vertices; ++v) {
        const auto& vd = g.vdata[v];
        int k = (int)vd.blocks.size();
        ex.blocks[v] = vd.blocks;
        std::vector<int> splice;                 // glue spliced into the core circle
        std::vector<std::vector<int>> satellites;
        for (int h = 0; h < vd.gamma; ++h) {
            int x = fresh(), y = fresh(), xb = fresh(), yb = fresh();
            splice.insert(splice.end(), {x, y, xb, yb});
            ex.glue.push_back({x, xb});
            ex.glue.push_back({y, yb});
        }
        // with no block the core circle is itself one of the free circles
        int windows = vd.beta;
        if (k == 0) {
            if (vd.beta == 0 && vd.gamma == 0)
                throw std::invalid_argument("empty ghost vertex");
            if (vd.beta == 0)
                throw std::invalid_argument("a closed ghost vertex has no state sum");
            windows = vd.beta - 1;
        }
        for (int w = 0; w < windows; ++w) {
            int z = fresh(), zb = fresh();
            splice.insert(splice.end(), {z, zb});
            ex.glue.push_back({z, zb});
        }
        for (int j = 1; j < k; ++j) {
            int c = fresh(), d = fresh(), ca = fresh(), da = fresh();
            splice.insert(splice.end(), {c, d});
            ex.glue.push_back({c, ca});
            ex.glue.push_back({d, da});
            std::vector<int> sat;
            if (model == 0) {
                sat = {ca, da};
                sat.insert(sat.end(), vd.blocks[j].begin(), vd.blocks[j].end());
            } else {
                sat = vd.blocks[j];
                sat.insert(sat.end(), {ca, da});
            }
            satellites.push_back(std::move(sat));
        }
        std::vector<int> core;
        if (k == 0) {
            core = splice;
        } else if (model == 0 || vd.blocks[0].empty()) {
            core = vd.blocks[0];
            core.insert(core.end(), splice.begin(), splice.end());
        } else {
            core.push_back(vd.blocks[0][0]);
            core.insert(core.end(), splice.begin(), splice.end());
            core.insert(core.end(), vd.blocks[0].begin() + 1, vd.blocks[0].end());
        }
        ex.words.push_back(std::move(core));
        ex.word_vertex.push_back(v);
        for (auto& sat : satellites) {
            ex.words.push_back(std::move(sat));
            ex.word_vertex.push_back(v);
        }
    }
    return ex;
}

struct eval_plan {
    const rmatrix* prop = nullptr;
    const rmatrix* pair = nullptr;
    std::vector<std::vector<int>> words;            // slot ids in trace order
    std::vector<std::pair<int, int>> factor_slots;  // (tail, head), edges then glue
    std::vector<char> factor_glue;                  // 1 when the factor is a copairing
    std::vector<int> slot_factor;
    std::vector<int> source_pos;                    // slot -> rank among factor slots
    std::vector<int> target_pos;                    // slot -> rank among word slots
    std::vector<std::vector<std::vector<int>>> vertex_blocks;
    int d = 0;
    int fixed_sign = 1;
};

// the two necks joining a satellite circle to its core point opposite ways;
// with an odd pairing the reversed one costs a sign
int decoration_sign(const prestable_graph& g, int d) {
    if (d == 0) return 1;
    long long e = 0;
    for (int v = 0; v < g.num_vertices; ++v) {
        int k = (int)g.vdata[v].blocks.size();
        if (k >= 2) e += k - 1;
    }
    return pow_sign(e);
}

eval_plan make_plan(const frobenius_data& a, const prestable_graph& g, int twist,
                    const rmatrix& prop, const rmatrix& pair, int model) {
    if (a.form_degree != twist)
        throw std::invalid_argument("the form degree of the algebra must equal the twist");
    auto ex = expand(g, model);
    eval_plan plan;
    plan.prop = &prop;
    plan.pair = &pair;
    plan.d = twist;
    plan.words = ex.words;
    plan.vertex_blocks = ex.blocks;
    plan.fixed_sign = decoration_sign(g, twist);
    for (auto [x, y] : g.edge_list()) {
        plan.factor_slots.push_back({x, y});
        plan.factor_glue.push_back(0);
    }
    for (auto [x, y] : ex.glue) {
        plan.factor_slots.push_back({x, y});
        plan.factor_glue.push_back(1);
    }
    plan.slot_factor.assign(ex.total, -1);
    plan.source_pos.assign(ex.total, -1);
    for (int i = 0; i < (int)plan.factor_slots.size(); ++i) {
        auto [x, y] = plan.factor_slots[i];
        plan.slot_factor[x] = plan.slot_factor[y] = i;
        plan.source_pos[x] = 2 * i;
        plan.source_pos[y] = 2 * i + 1;
    }
    plan.target_pos.assign(ex.total, -1);
    int rank = 0;
    for (const auto& word : plan.words) {
        if ((int)word.size() < 2)
            throw std::invalid_argument("a circle needs at least two letters");
        for (int s : word) plan.target_pos[s] = rank++;
    }
    for (int s = 0; s < ex.total; ++s)
        if (plan.slot_factor[s] < 0 || plan.target_pos[s] < 0)
            throw std::logic_error("expansion left a dangling flag");
    return plan;
}

std::vector<rational> mul_basis(const frobenius_data& a, const std::vector<rational>& x,
                                int j) {
    int n = a.dim();
    std::vector<rational> out(n, rational(0));
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int k = 0; k < n; ++k)
            if (a.mul[i][j][k] != 0) out[k] += x[i] * a.mul[i][j][k];
    }
    return out;
}

bool zero_vec(const std::vector<rational>& x) {
    for (const auto& c : x)
        if (c != 0) return false;
    return true;
}

struct evaluator {
    const eval_plan& plan;
    const frobenius_data& alg;
    const std::vector<int>& order; // word visit order
    std::vector<int> label;
    rational running = 1;
    rational total = 0;

    evaluator(const eval_plan& p, const frobenius_data& a, const std::vector<int>& o)
        : plan(p), alg(a), order(o), label(p.source_pos.size(), -1) {}

    int leaf_sign() const {
        // koszul sign of rearranging the factor slots into the word order
        long long inv = 0;
        std::vector<int> odd;
        for (int s = 0; s < (int)label.size(); ++s)
            if (alg.parity[label[s]]) odd.push_back(s);
        for (int i = 0; i < (int)odd.size(); ++i)
            for (int j = 0; j < (int)odd.size(); ++j)
                if (plan.target_pos[odd[i]] < plan.target_pos[odd[j]] &&
                    plan.source_pos[odd[i]] > plan.source_pos[odd[j]])
                    ++inv;
        // circles of one vertex are normally ordered by their block parities
        for (const auto& blocks : plan.vertex_blocks) {
            int k = (int)blocks.size();
            if (k < 2) continue;
            std::vector<int> pb(k, 0);
            for (int l = 0; l < k; ++l)
                for (int s : blocks[l]) pb[l] = (pb[l] + alg.parity[label[s]]) & 1;
            for (int l = 0; l < k; ++l)
                for (int j = l + 1; j < k; ++j)
                    inv += (plan.d + pb[l]) * (plan.d + pb[j]);
        }
        return pow_sign(inv);
    }

    void finish() { total += rational(leaf_sign() * plan.fixed_sign) * running; }

    void visit_word(int oi) {
        if (oi == (int)order.size()) {
            finish();
            return;
        }
        const auto& word = plan.words[order[oi]];
        std::vector<rational> prefix;
        visit_slot(oi, word, 0, prefix);
    }

    void visit_slot(int oi, const std::vector<int>& word, int pos,
                    const std::vector<rational>& prefix) {
        if (pos == (int)word.size()) {
            visit_word(oi + 1);
            return;
        }
        int s = word[pos];
        int fa = plan.slot_factor[s];
        auto [ta, he] = plan.factor_slots[fa];
        int partner = s == ta ? he : ta;
        const rmatrix& coef = plan.factor_glue[fa] ? *plan.pair : *plan.prop;
        int n = alg.dim();
        for (int i = 0; i < n; ++i) {
            rational weight = 1;
            if (label[partner] >= 0) {
                weight = s == ta ? coef[i][label[partner]] : coef[label[partner]][i];
                if (weight == 0) continue;
            } else {
                bool used = false;
                for (int q = 0; q < n && !used; ++q)
                    used = (s == ta ? coef[i][q] : coef[q][i]) != 0;
                if (!used) continue;
            }
            label[s] = i;
            rational keep = running;
            running *= weight;
            step_word(oi, word, pos, prefix, i);
            running = keep;
            label[s] = -1;
        }
    }

    void step_word(int oi, const std::vector<int>& word, int pos,
                   const std::vector<rational>& prefix, int i) {
        int m = (int)word.size();
        if (pos == m - 1) {
            // pair the accumulated product with the last letter
            rational t = 0;
            for (int r = 0; r < alg.dim(); ++r)
                if (prefix[r] != 0) t += prefix[r] * alg.form[r][i];
            if (t == 0) return;
            rational keep = running;
            running *= t;
            visit_slot(oi, word, pos + 1, prefix);
            running = keep;
            return;
        }
        std::vector<rational> next;
        if (pos == 0) {
            next.assign(alg.dim(), rational(0));
            next[i] = 1;
        } else {
            next = mul_basis(alg, prefix, i);
            if (zero_vec(next)) return;
        }
        visit_slot(oi, word, pos + 1, next);
    }
};

rational run_state_sum(const frobenius_data& a, const prestable_graph& g, int twist,
                       const std::vector<int>* word_order, int model) {
    auto prop = propagator(a);
    auto pair = inverse_form(a);
    auto plan = make_plan(a, g, twist, prop, pair, model);
    std::vector<int> order(plan.words.size());
    for (int i = 0; i < (int)order.size(); ++i) order[i] = i;
    if (word_order) {
        if (word_order->size() != order.size())
            throw std::invalid_argument("word order must list every circle once");
        order = *word_order;
    }
    evaluator ev(plan, a, order);
    ev.visit_word(0);
    return ev.total;
}

} // namespace

rmatrix propagator(const frobenius_data& a) {
    if (!a.has_s())
        throw std::invalid_argument("the state sum needs a contracting homotopy");
    auto c = inverse_form(a);
    int n = a.dim();
    rmatrix p(n, std::vector<rational>(n, rational(0)));
    for (int i = 0; i < n; ++i)
        for (int q = 0; q < n; ++q) {
            rational acc = 0;
            for (int j = 0; j < n; ++j)
                if (c[i][j] != 0) acc += c[i][j] * a.s[q][j];
            p[i][q] = a.parity[i] ? -acc : acc;
        }
    return p;
}

prestable_graph expansion_graph(const prestable_graph& g, int model) {
    auto ex = expand(g, model);
    prestable_graph out;
    out.num_vertices = (int)ex.words.size();
    out.vertex_of.assign(ex.total, -1);
    out.sigma.assign(ex.total, -1);
    out.vdata.resize(out.num_vertices);
    for (int w = 0; w < (int)ex.words.size(); ++w) {
        out.vdata[w].blocks = {ex.words[w]};
        for (int f : ex.words[w]) out.vertex_of[f] = w;
    }
    for (int f = 0; f < g.flag_count(); ++f) out.sigma[f] = g.sigma[f];
    for (auto [x, y] : ex.glue) {
        out.sigma[x] = y;
        out.sigma[y] = x;
    }
    validate(out);
    return out;
}

rational amplitude(const frobenius_data& a, const prestable_graph& g, int twist) {
    return run_state_sum(a, g, twist, nullptr, 0);
}

rational amplitude(const frobenius_data& a, const prestable_graph& g, int twist,
                   const std::vector<int>& word_order) {
    return run_state_sum(a, g, twist, &word_order, 0);
}

rational amplitude_alt(const frobenius_data& a, const prestable_graph& g, int twist) {
    return run_state_sum(a, g, twist, nullptr, 1);
}

std::vector<std::vector<rational>> partition_cochain(const frobenius_data& a,
                                                     const graph_complex& gc) {
    if (is_comm_family(gc.fam))
        throw std::invalid_argument("the state sum needs a ribbon family");
    std::vector<std::vector<rational>> z(gc.levels());
    for (int level = 0; level < gc.levels(); ++level) {
        z[level].reserve(gc.ribbon_basis[level].size());
        for (const auto& g : gc.ribbon_basis[level])
            z[level].push_back(amplitude(a, g, gc.twist));
    }
    return z;
}

cocycle_report verify_cocycle(const frobenius_data& a, const graph_complex& gc) {
    auto z = partition_cochain(a, gc);
    cocycle_report rep;
    for (int level = 1; level < gc.levels(); ++level) {
        for (int j = 0; j < (int)gc.boundary[level].col.size(); ++j) {
            rational acc = 0;
            for (const auto& [row, coef] : gc.boundary[level].col[j])
                acc += rational(coef) * z[level - 1][row];
            if (acc != 0) {
                rep.ok = false;
                rep.items.push_back({level, j, gc.keys[level][j], acc});
            }
        }
    }
    return rep;
}

} // namespace gcx
