#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcx/complexes.hpp"

namespace gcx {

// rank over the rationals.  fraction-free elimination on arbitrary-precision
// integers; ranks modulo a few fixed primes can certify the answer early, but
// only when they reach the largest rank the shape allows.
int rank_exact(int rows, const std::vector<std::map<int, int>>& cols);
int rank_exact(const level_matrix& m);

// a chain complex stripped down to what homology needs.  boundary[i] maps
// level i to level i-1 (boundary[0] has no rows).  complete means nothing
// exists above the top level; a truncated top level only brackets its betti
// number because the boundary coming in from above was never built.
struct chain_data {
    std::vector<int> dims;
    std::vector<level_matrix> boundary;
    bool complete = true;
};

chain_data chain_of(const graph_complex& gc);
chain_data chain_of(const bv_complex& bc);
chain_data chain_of(const dft_complex& dc);

// betti[i] = dims[i] - ranks[i] - ranks[i+1], with the rank of the unseen
// boundary above the top level taken as zero.  betti_low differs from betti
// only at a truncated top, where it drops to zero.
struct homology_report {
    std::vector<int> dims;
    std::vector<int> ranks; // ranks[i] = rank of boundary[i]; ranks[0] = 0
    std::vector<int> betti;
    std::vector<int> betti_low;
    bool complete = true;
    long long euler = 0; // alternating sum of dims
};

homology_report homology(const chain_data& c);
homology_report homology(const graph_complex& gc);

std::vector<int> betti(const graph_complex& gc);
long long euler_characteristic(const graph_complex& gc);

// regrades homology one degree up and restores a one-dimensional piece in
// degree 0, undoing the removal of the graph with no edges
std::vector<int> hat_betti(const graph_complex& gc);

// line-keyed text form of the report; a truncated top level prints both
// bounds on its betti line
std::string report_text(const homology_report& r);

} // namespace gcx
