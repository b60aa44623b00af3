#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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

TEST_CASE("validation accepts the basic shapes") {
    CHECK_NOTHROW(validate(theta()));
    CHECK_NOTHROW(validate(figure_eight()));
    CHECK_NOTHROW(validate(dumbbell()));
    CHECK_NOTHROW(validate(single_vertex(2, 0)));
    CHECK_NOTHROW(validate(single_vertex(0, 3)));

    comm_graph empty;
    CHECK_THROWS_AS(validate(empty), std::invalid_argument);

    comm_graph disconnected;
    disconnected.num_vertices = 2;
    disconnected.genus = {1, 1};
    CHECK_THROWS_AS(validate(disconnected), std::invalid_argument);

    comm_graph bad = theta();
    bad.sigma[0] = 0; // fixed point without a leg label
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("total genus of the named examples") {
    CHECK(total_genus(theta()) == 2);
    CHECK(total_genus(single_vertex(2, 0)) == 2);
    CHECK(total_genus(figure_eight()) == 2);
    CHECK(total_genus(dumbbell()) == 2);
}

TEST_CASE("stability inequality") {
    CHECK(is_stable(theta()));
    CHECK(is_stable(figure_eight()));
    CHECK(is_stable(single_vertex(1, 1)));
    CHECK(is_stable(single_vertex(0, 3)));
    CHECK_FALSE(is_stable(single_vertex(0, 0)));
    CHECK_FALSE(is_stable(single_vertex(0, 1)));
    CHECK_FALSE(is_stable(single_vertex(0, 2)));
    CHECK_FALSE(is_stable(single_vertex(1, 0)));
    CHECK(is_stable(single_vertex(2, 0)));

    // bivalent genus-0 vertex: admitted by the extended notion only next to a leg
    comm_graph capped = single_vertex(1, 0);
    capped.num_vertices = 2;
    capped.genus.push_back(0);
    add_edge(capped, 0, 1);
    add_leg(capped, 1);
    CHECK_FALSE(is_stable(capped));
    CHECK(is_extended_stable(capped));

    comm_graph bar; // two genus-1 vertices joined through a bare bivalent one
    bar.num_vertices = 3;
    bar.genus = {1, 0, 1};
    add_edge(bar, 0, 1);
    add_edge(bar, 1, 2);
    CHECK_FALSE(is_extended_stable(bar));
}

TEST_CASE("contract_edge on the named examples") {
    // dumbbell, contract the bridge -> figure-eight
    {
        comm_graph g = dumbbell();
        // bridge flags are 2,3
        auto c = contract_edge(g, 2);
        validate(c.result);
        CHECK(c.result.num_vertices == 1);
        CHECK(c.result.genus == std::vector<int>{0});
        CHECK(c.result.num_edges() == 2);
        CHECK(c.result.sigma[0] == 1); // two loops at one vertex
        CHECK(c.result.sigma[2] == 3);
        CHECK(total_genus(c.result) == 2);
    }
    // figure-eight, contract one loop -> genus-1 vertex with one loop
    {
        auto c = contract_edge(figure_eight(), 0);
        validate(c.result);
        CHECK(c.result.num_vertices == 1);
        CHECK(c.result.genus == std::vector<int>{1});
        CHECK(c.result.num_edges() == 1);
        CHECK(total_genus(c.result) == 2);
    }
    // theta, contract one edge -> figure-eight
    {
        auto c = contract_edge(theta(), 0);
        validate(c.result);
        CHECK(c.result.num_vertices == 1);
        CHECK(c.result.genus == std::vector<int>{0});
        CHECK(c.result.num_edges() == 2);
        CHECK(total_genus(c.result) == 2);
    }
    CHECK_THROWS_AS(contract_edge(single_vertex(1, 1), 0), std::invalid_argument);
}

TEST_CASE("contract_edge preserves total genus and stability on a sweep") {
    std::vector<comm_graph> pool = {theta(), figure_eight(), dumbbell()};
    // a few decorated variants
    comm_graph g1 = theta();
    g1.genus = {1, 2};
    pool.push_back(g1);
    comm_graph g2 = dumbbell();
    g2.genus = {0, 3};
    pool.push_back(g2);
    comm_graph g3 = single_vertex(1, 2);
    add_loop(g3, 0);
    pool.push_back(g3);

    for (const auto& g : pool) {
        for (auto [a, b] : g.edge_list()) {
            auto c = contract_edge(g, a);
            validate(c.result);
            CHECK(total_genus(c.result) == total_genus(g));
            CHECK(c.result.num_legs() == g.num_legs());
            if (is_stable(g)) CHECK(is_stable(c.result));
        }
    }
}

TEST_CASE("flag and vertex maps of a contraction") {
    comm_graph g = dumbbell();
    auto c = contract_edge(g, 2);
    CHECK(c.flag_map == std::vector<int>{0, 1, -1, -1, 2, 3});
    CHECK(c.vertex_map == std::vector<int>{0, 0});
    // loop contraction keeps every vertex
    auto c2 = contract_edge(figure_eight(), 0);
    CHECK(c2.flag_map == std::vector<int>{-1, -1, 0, 1});
    CHECK(c2.vertex_map == std::vector<int>{0});
}

TEST_CASE("glueing") {
    // two single-vertex genus-1 one-leg graphs -> one genus-2 vertex, no legs
    {
        comm_graph a = single_vertex(1, 1);
        comm_graph b = single_vertex(1, 1);
        comm_graph r = glue_and_contract(a, 1, b, 1);
        validate(r);
        CHECK(r.num_vertices == 1);
        CHECK(r.genus == std::vector<int>{2});
        CHECK(r.num_edges() == 0);
        CHECK(r.num_legs() == 0);
    }
    // self-glue two legs at one genus-1 vertex -> genus-2 vertex
    {
        comm_graph a = single_vertex(1, 2);
        comm_graph r = self_glue(a, 1, 2);
        validate(r);
        CHECK(r.num_vertices == 1);
        CHECK(r.genus == std::vector<int>{2});
        CHECK(r.num_legs() == 0);
    }
    // 3-leg genus-0 vertex glued to a 1-leg genus-1 vertex -> 2-leg genus-1 vertex
    {
        comm_graph a = single_vertex(0, 3);
        comm_graph b = single_vertex(1, 1);
        comm_graph r = glue_and_contract(a, 2, b, 1);
        validate(r);
        CHECK(r.num_vertices == 1);
        CHECK(r.genus == std::vector<int>{1});
        CHECK(r.num_legs() == 2);
    }
    CHECK_THROWS_AS(glue_and_contract(single_vertex(0, 3), 4, single_vertex(1, 1), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(self_glue(single_vertex(1, 2), 1, 1), std::invalid_argument);
}

TEST_CASE("leg relabeling after glueing keeps first-argument order") {
    comm_graph a = single_vertex(0, 4);
    comm_graph b = single_vertex(0, 3);
    comm_graph r = glue_and_contract(a, 2, b, 3);
    validate(r);
    CHECK(r.num_legs() == 5);
    // surviving legs of a (labels 1,3,4) come first, then b's (labels 1,2)
    CHECK(r.vertex_of[r.legs[0]] == 0);
    CHECK(total_genus(r) == 0);
    CHECK(r.num_vertices == 1);
}
