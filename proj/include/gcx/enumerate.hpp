#pragma once

#include <string>
#include <vector>

#include "gcx/halfedge.hpp"

namespace gcx {

enum class family {
    com_underline, // stable graphs, every genus label zero
    com_bar,       // stable graphs, arbitrary genus labels
    ass_underline, // plain ribbon: gamma = beta = 0, one block per vertex
    kass,          // stable ribbon: beta = 0 everywhere
    ass_bar,       // prestable ribbon, unrestricted
    rass,          // gamma = 0 everywhere
    krass          // gamma = beta = 0, blocks free
};

const char* family_name(family f);
family family_from_name(const std::string& name);
bool is_comm_family(family f);

// all isomorphism classes of connected stable genus-labeled graphs with the
// given total genus, leg count and edge count, canonical and key-sorted.
// for com_underline only all-zero genus labels are kept.
std::vector<comm_graph> enumerate_stable_graphs(int genus, int legs, int edge_count,
                                                family fam);

// every edge level 0..max_edges at once (levels are built incrementally anyway)
std::vector<std::vector<comm_graph>> enumerate_stable_levels(int genus, int legs,
                                                             int max_edges, family fam);

} // namespace gcx
