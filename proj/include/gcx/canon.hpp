#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gcx/halfedge.hpp"
#include "gcx/ribbon.hpp"

namespace gcx {

// generic vertex- and arc-colored digraph used as the common canonicalization
// substrate for every graph flavor in the project.
struct colored_digraph {
    std::vector<int> color;
    std::vector<std::vector<std::pair<int, int>>> out; // node -> (target, arc color)

    int size() const { return (int)color.size(); }
    int add_node(int c) {
        color.push_back(c);
        out.emplace_back();
        return size() - 1;
    }
    void add_arc(int a, int b, int c) { out[a].push_back({b, c}); }
};

struct digraph_canon {
    std::vector<int> lab;                    // node -> canonical position
    std::vector<int64_t> certificate;        // equal iff isomorphic
    std::vector<std::vector<int>> aut;       // full automorphism list, node -> node
};

// individualization-refinement search returning the minimal certificate,
// one witnessing labeling, and the full automorphism group (small at this scale)
digraph_canon canonicalize_digraph(const colored_digraph& g);

// ---- commutative graphs ----

struct comm_canon {
    comm_graph canonical;
    std::vector<int> flag_relabel;              // input flag -> canonical flag
    std::vector<int> vertex_relabel;            // input vertex -> canonical vertex
    std::vector<std::vector<int>> flag_auts;    // automorphisms of the canonical graph
    std::vector<std::vector<int>> vertex_auts;  // matching vertex permutations
    std::string key;                            // serialization of the canonical graph
};

comm_canon canonical_form(const comm_graph& g);
std::string serialize(const comm_graph& g);
std::string canonical_key(const comm_graph& g);

comm_graph relabel(const comm_graph& g, const std::vector<int>& flag_perm,
                   const std::vector<int>& vertex_perm);
// vertex permutation induced by a flag permutation taking g to h
std::vector<int> induced_vertex_map(const comm_graph& g, const comm_graph& h,
                                    const std::vector<int>& flag_perm);

// ---- two-colored graphs ----

struct bv_canon {
    bv_graph canonical;
    std::vector<int> flag_relabel;
    std::vector<int> vertex_relabel;
    std::vector<std::vector<int>> flag_auts;    // color-preserving automorphisms
    std::vector<std::vector<int>> vertex_auts;
    std::string key;
};

bv_canon canonical_form(const bv_graph& b);
std::string serialize(const bv_graph& b);
bv_graph relabel(const bv_graph& b, const std::vector<int>& flag_perm,
                 const std::vector<int>& vertex_perm);

// ---- prestable ribbon graphs ----

struct prestable_canon {
    prestable_graph canonical;
    std::vector<int> flag_relabel;              // input flag -> canonical flag
    std::vector<int> vertex_relabel;            // input vertex -> canonical vertex
    std::vector<std::vector<int>> flag_auts;    // automorphisms of the canonical graph
    std::vector<std::vector<int>> vertex_auts;  // matching vertex permutations
    std::string key;
};

prestable_canon canonical_form(const prestable_graph& g);
std::string serialize(const prestable_graph& g);
std::string canonical_key(const prestable_graph& g);

prestable_graph relabel(const prestable_graph& g, const std::vector<int>& flag_perm,
                        const std::vector<int>& vertex_perm);
// rotate each block so its minimal flag leads, sort a vertex's blocks by leading flag
prestable_graph normalize_blocks(const prestable_graph& g);

} // namespace gcx
