#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gcx {

// connected graph stored as half-edges ("flags").  vertex_of[f] is the vertex
// carrying flag f; sigma is an involution whose 2-cycles are the edges and
// whose fixed points are the legs.  legs[k] is the flag carrying leg label
// k+1.  every vertex has a genus label; dotted loops are never materialized,
// the label is the only record of them.
struct comm_graph {
    int num_vertices = 0;
    std::vector<int> vertex_of;
    std::vector<int> sigma;
    std::vector<int> legs;
    std::vector<int> genus;

    int flag_count() const { return (int)vertex_of.size(); }
    int num_legs() const { return (int)legs.size(); }
    bool is_leg(int f) const { return sigma[f] == f; }
    int num_edges() const;
    // edge flag pairs (min,max), sorted by the smaller flag
    std::vector<std::pair<int, int>> edge_list() const;
    int valence(int v) const;
};

// throws std::invalid_argument when the record is not a connected genus-labeled graph
void validate(const comm_graph& g);
bool is_connected(const comm_graph& g);
// 2(g(v)-1) + n(v) > 0 at every vertex
bool is_stable(const comm_graph& g);
// stability relaxed at bivalent genus-0 vertices provided they touch a leg
bool is_extended_stable(const comm_graph& g);
int first_betti(const comm_graph& g);
// E - V + 1 + sum of genus labels
int total_genus(const comm_graph& g);

// construction helpers
comm_graph single_vertex(int genus, int legs);
void add_edge(comm_graph& g, int u, int v);   // appends two flags
void add_loop(comm_graph& g, int v);
void add_leg(comm_graph& g, int v);           // next leg label

// stable graph with every edge painted black or white.  the paint is stored
// per flag and agrees on the two flags of an edge; legs stay unpainted (0).
struct bv_graph {
    comm_graph g;
    std::vector<char> white;

    int black_count() const;
    // black edge flag pairs (min,max), sorted by the smaller flag
    std::vector<std::pair<int, int>> black_edge_list() const;
};

// throws std::invalid_argument when the paint is inconsistent
void validate(const bv_graph& b);

struct comm_contraction {
    comm_graph result;
    std::vector<int> flag_map;    // old flag -> new flag, -1 for the removed pair
    std::vector<int> vertex_map;  // old vertex -> new vertex
};

// contract the edge containing the given flag.  endpoints merge (genera add)
// and a loop turns into a genus bump.  surviving flags and vertices keep
// their relative order; a merged vertex sits at the smaller of the two slots.
comm_contraction contract_edge(const comm_graph& g, int flag);

// graft leg_i of g to leg_j of h into an edge, then contract it.  surviving
// legs of g keep their relative order and are labeled first, those of h follow.
comm_graph glue_and_contract(const comm_graph& g, int leg_i, const comm_graph& h, int leg_j);
// graft two legs of the same graph into an edge, then contract it
comm_graph self_glue(const comm_graph& g, int leg_i, int leg_j);

} // namespace gcx
