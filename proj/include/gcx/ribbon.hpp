#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gcx/enumerate.hpp"
#include "gcx/halfedge.hpp"

namespace gcx {

// a vertex is a ghost surface: genus defect gamma, boundary defect beta
// (free boundary circles), and the remaining boundary circles carrying the
// flags as non-empty cyclic words
struct prestable_vertex {
    int gamma = 0;
    int beta = 0;
    std::vector<std::vector<int>> blocks;
};

struct prestable_graph {
    int num_vertices = 0;
    std::vector<int> vertex_of;
    std::vector<int> sigma; // fixed-point free: no legs here
    std::vector<prestable_vertex> vdata;

    int flag_count() const { return (int)vertex_of.size(); }
    int num_edges() const { return flag_count() / 2; }
    std::vector<std::pair<int, int>> edge_list() const;
    int valence(int v) const;
};

// 2*gamma + beta + #blocks - 1, the genus contribution of the ghost surface
int ghost_genus(const prestable_vertex& v);
// euler characteristic 2 - 2*gamma - beta - #blocks of the ghost surface
int surface_euler(const prestable_vertex& v);

void validate(const prestable_graph& g);
bool is_connected(const prestable_graph& g);

// cyclic successor of a flag inside its block
int next_in_block(const prestable_graph& g, int f);

// face cycles of phi(f) = next(sigma(f)); nu counts them plus all boundary defects
struct boundary_data {
    std::vector<std::vector<int>> cycles;
    int nu = 0;
};
boundary_data boundary_cycles(const prestable_graph& g);
int prestable_nu(const prestable_graph& g);
// genus of the glued surface, from chi = sum surface_euler - |edges|
int prestable_genus(const prestable_graph& g);

bool in_family(const prestable_graph& g, family fam);
// commutative shadow: each vertex keeps its ghost genus as the label
comm_graph underlying_comm(const prestable_graph& g);

// circles of a vertex are its blocks followed by beta unmarked ones;
// flat ids run over vertices in order
int circle_count(const prestable_graph& g);
int circle_offset(const prestable_graph& g, int v);
int circle_of_flag(const prestable_graph& g, int f);

struct ribbon_contraction {
    prestable_graph result;
    std::vector<int> flag_map;   // -1 on the removed pair
    std::vector<int> vertex_map;
    int kind = 0;                // 0: two vertices, 1: one vertex two blocks, 2: same block
    std::vector<int> circle_origin; // result circle -> source circle, -1 if created
    int tail_circle = -1;        // source circle holding the smaller flag
    int head_circle = -1;        // source circle holding the larger flag
    int spliced_circle = -1;     // result circle continuing the tail block
    int created_circle = -1;     // kind 2: the second arc
    int consumed_circle = -1;    // kind 0/1: absorbed head block (source id)
};

// contract the edge through the given flag.  the smaller flag is the tail:
// its block is rotated to end there, the head block to start at the partner,
// and the two are spliced (same-block edges split into the two arcs instead).
// genus defects balance the euler count, empty arcs become boundary defects.
ribbon_contraction contract_ribbon_edge(const prestable_graph& g, int flag);

// decorate commutative skeletons and keep the (gamma, nu) stratum
std::vector<prestable_graph> enumerate_prestable(int gamma, int nu, int edge_count,
                                                 family fam);
std::vector<std::vector<prestable_graph>> enumerate_prestable_levels(int gamma, int nu,
                                                                     int max_edges,
                                                                     family fam);

// construction helper: plain one-block vertices from explicit words;
// words index flags, sigma pairs flag 2i with 2i+1 unless given explicitly
prestable_graph ribbon_from_blocks(int num_vertices,
                                   const std::vector<std::vector<std::vector<int>>>& blocks,
                                   const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<std::pair<int, int>>& defects = {});

} // namespace gcx
