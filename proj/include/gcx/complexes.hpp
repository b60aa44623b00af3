#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcx/enumerate.hpp"
#include "gcx/ribbon.hpp"

namespace gcx {

// column-major integer matrix, small coefficients
struct level_matrix {
    int rows = 0, cols = 0;
    std::vector<std::map<int, int>> col; // col[j]: row -> coefficient

    void add(int r, int c, int v) {
        auto& cell = col[c][r];
        cell += v;
        if (cell == 0) col[c].erase(r);
    }
};

// chain complex of d-oriented graphs graded by edge count.  boundary[e] maps
// level e to level e-1 (boundary[0] has no rows).  classes killed by their
// own symmetries are left out of the bases.
struct graph_complex {
    family fam = family::com_bar;
    int twist = 0;
    int a = 0, b = 0; // (genus, legs) for commutative families, (gamma, nu) otherwise
    std::vector<std::vector<comm_graph>> comm_basis;
    std::vector<std::vector<prestable_graph>> ribbon_basis;
    std::vector<std::vector<std::string>> keys;
    std::vector<std::map<std::string, int>> index;
    std::vector<level_matrix> boundary;

    int levels() const { return (int)keys.size(); }
    std::vector<int> dims() const;
};

// largest edge count a graph of the family can have; complexes built with at
// least this cutoff are complete
int max_edges_comm(int genus, int legs);
int max_edges_ribbon(int gamma, int nu);

graph_complex build_complex(family fam, int twist, int a, int b, int max_edges);

// two-colored vacuum complex graded by black edge count; the differential
// contracts a black edge or repaints it white, with the orientation carried
// by the black edges alone
struct bv_complex {
    int genus = 0;
    std::vector<std::vector<bv_graph>> basis;
    std::vector<std::vector<std::string>> keys;
    std::vector<std::map<std::string, int>> index;
    std::vector<level_matrix> boundary;

    int levels() const { return (int)keys.size(); }
    std::vector<int> dims() const;
};

bv_complex build_bv_complex(int genus, int max_black);

// legged graph with a subset of legs marked by the contracting homotopy;
// each mark counts as one edge of the grading
struct dft_element {
    comm_graph g;
    std::uint32_t marks = 0;
};

// complex of marked legged stable graphs.  the differential contracts solid
// edges and absorbs marks one at a time.
struct dft_complex {
    int genus = 0, legs = 0;
    std::vector<std::vector<dft_element>> basis;
    std::vector<std::vector<std::string>> keys;
    std::vector<std::map<std::string, int>> index;
    std::vector<level_matrix> boundary;

    int levels() const { return (int)keys.size(); }
    std::vector<int> dims() const;
};

dft_complex build_dft_comm_complex(int genus, int legs, int max_edges);

struct square_check {
    bool ok = true;
    int level = -1, source = -1, target = -1;
    long long value = 0;
};

// verify that consecutive boundary maps compose to zero
square_check check_d_squared(const std::vector<level_matrix>& boundary);
square_check check_d_squared(const graph_complex& gc);

} // namespace gcx
