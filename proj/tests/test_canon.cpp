#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gcx/canon.hpp"
#include "gcx/halfedge.hpp"

using namespace gcx;

static comm_graph theta() {
    comm_graph g;
    g.num_vertices = 2;
    g.genus = {0, 0};
    add_edge(g, 0, 1);
    add_edge(g, 0, 1);
    add_edge(g, 0, 1);
    return g;
}

static comm_graph figure_eight() {
    comm_graph g;
    g.num_vertices = 1;
    g.genus = {0};
    add_loop(g, 0);
    add_loop(g, 0);
    return g;
}

static comm_graph dumbbell() {
    comm_graph g;
    g.num_vertices = 2;
    g.genus = {0, 0};
    add_loop(g, 0);
    add_edge(g, 0, 1);
    add_loop(g, 1);
    return g;
}

// exhaustive isomorphism test over all flag bijections; independent of the
// canonicalizer, usable up to ~7 flags
static bool brute_isomorphic(const comm_graph& g, const comm_graph& h) {
    if (g.flag_count() != h.flag_count() || g.num_vertices != h.num_vertices ||
        g.num_legs() != h.num_legs())
        return false;
    int m = g.flag_count();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int k = 0; k < g.num_legs() && ok; ++k)
            if (perm[g.legs[k]] != h.legs[k]) ok = false;
        for (int f = 0; f < m && ok; ++f)
            if (perm[g.sigma[f]] != h.sigma[perm[f]]) ok = false;
        if (!ok) continue;
        std::vector<int> vm(g.num_vertices, -1);
        for (int f = 0; f < m && ok; ++f) {
            int a = g.vertex_of[f], b = h.vertex_of[perm[f]];
            if (vm[a] < 0)
                vm[a] = b;
            else if (vm[a] != b)
                ok = false;
        }
        if (!ok) continue;
        std::vector<char> used(h.num_vertices, 0);
        for (int v = 0; v < g.num_vertices && ok; ++v) {
            if (vm[v] < 0) continue;
            if (used[vm[v]] || h.genus[vm[v]] != g.genus[v]) ok = false;
            used[vm[v]] = 1;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

static comm_graph random_relabel(const comm_graph& g, std::mt19937& rng) {
    std::vector<int> fp(g.flag_count()), vp(g.num_vertices);
    std::iota(fp.begin(), fp.end(), 0);
    std::iota(vp.begin(), vp.end(), 0);
    std::shuffle(fp.begin(), fp.end(), rng);
    std::shuffle(vp.begin(), vp.end(), rng);
    return relabel(g, fp, vp);
}

TEST_CASE("canonical keys are relabeling invariants") {
    std::mt19937 rng(12345);
    std::vector<comm_graph> pool = {theta(), figure_eight(), dumbbell(),
                                    single_vertex(2, 0), single_vertex(1, 2)};
    comm_graph decorated = theta();
    decorated.genus = {1, 0};
    pool.push_back(decorated);
    comm_graph legged = theta();
    add_leg(legged, 0);
    add_leg(legged, 1);
    pool.push_back(legged);

    for (const auto& g : pool) {
        std::string key = canonical_key(g);
        for (int t = 0; t < 25; ++t) {
            comm_graph h = random_relabel(g, rng);
            validate(h);
            CHECK(canonical_key(h) == key);
        }
        // canonicalization is idempotent
        auto c = canonical_form(g);
        CHECK(canonical_form(c.canonical).key == c.key);
        CHECK(serialize(c.canonical) == c.key);
    }
}

TEST_CASE("distinct classes get distinct keys") {
    std::vector<comm_graph> pool = {theta(), figure_eight(), dumbbell(), single_vertex(2, 0)};
    comm_graph g1 = theta();
    g1.genus = {1, 0};
    pool.push_back(g1);
    comm_graph g2 = single_vertex(1, 0);
    add_loop(g2, 0);
    pool.push_back(g2);
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = i + 1; j < pool.size(); ++j) {
            CHECK(canonical_key(pool[i]) != canonical_key(pool[j]));
            CHECK_FALSE(brute_isomorphic(pool[i], pool[j]));
        }
}

TEST_CASE("key equality matches brute-force isomorphism") {
    // pairs built to be isomorphic in a scrambled presentation
    std::mt19937 rng(999);
    std::vector<comm_graph> pool = {theta(), dumbbell(), figure_eight()};
    comm_graph tri; // triangle
    tri.num_vertices = 3;
    tri.genus = {0, 1, 0};
    add_edge(tri, 0, 1);
    add_edge(tri, 1, 2);
    add_edge(tri, 2, 0);
    pool.push_back(tri);
    for (const auto& g : pool) {
        comm_graph h = random_relabel(g, rng);
        CHECK(brute_isomorphic(g, canonical_form(h).canonical));
        CHECK(canonical_key(g) == canonical_key(h));
    }
}

TEST_CASE("automorphism counts of the standard shapes") {
    // theta: permute three parallel edges, swap the vertices
    CHECK(canonical_form(theta()).flag_auts.size() == 12);
    // figure-eight: flip either loop, swap the loops
    CHECK(canonical_form(figure_eight()).flag_auts.size() == 8);
    // dumbbell: flip either loop, swap the lobes (bridge flips along)
    CHECK(canonical_form(dumbbell()).flag_auts.size() == 8);
    // legs are pinned pointwise
    CHECK(canonical_form(single_vertex(1, 2)).flag_auts.size() == 1);
    comm_graph legged_theta = theta();
    add_leg(legged_theta, 0);
    CHECK(canonical_form(legged_theta).flag_auts.size() == 6);
}

TEST_CASE("automorphisms really are automorphisms") {
    for (const auto& g : {theta(), dumbbell(), figure_eight()}) {
        auto c = canonical_form(g);
        for (size_t i = 0; i < c.flag_auts.size(); ++i) {
            comm_graph h = relabel(c.canonical, c.flag_auts[i], c.vertex_auts[i]);
            CHECK(serialize(h) == c.key);
        }
    }
}

TEST_CASE("vertex maps follow flag maps") {
    comm_graph g = theta();
    auto c = canonical_form(g);
    auto vm = induced_vertex_map(g, c.canonical, c.flag_relabel);
    CHECK(vm == c.vertex_relabel);
}
