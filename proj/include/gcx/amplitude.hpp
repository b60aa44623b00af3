#pragma once

#include <string>
#include <vector>

#include "gcx/complexes.hpp"
#include "gcx/frobenius.hpp"
#include "gcx/ribbon.hpp"

namespace gcx {

// the copairing with the homotopy applied to its second slot, the tensor the
// state sum places on every real edge.  swapping the slots costs the same
// sign as swapping the form, (-1)^(form degree + |x||y|).
rmatrix propagator(const frobenius_data& a);

// plain ribbon presentation of the state sum of one stored graph: each ghost
// vertex becomes a core circle carrying its first block, a handle quad per
// genus defect, a window pair per free circle and a two-edge neck to one
// satellite circle per extra block.  original flags keep their ids and
// pairings; the glue flags follow.  two layouts differ in where the glue
// is spliced into the words.
prestable_graph expansion_graph(const prestable_graph& g, int model = 0);

// state sum of one stored graph: expand, decorate every flag with a basis
// label, weight real edges by the propagator, glue edges by the copairing,
// every circle by the cyclic trace of its word, and the whole assignment by
// the Koszul sign of rearranging the edge factors into the word order.
// throws unless the algebra has a homotopy and its form degree is the twist.
rational amplitude(const frobenius_data& a, const prestable_graph& g, int twist);
// same value, circles explored in the given order
rational amplitude(const frobenius_data& a, const prestable_graph& g, int twist,
                   const std::vector<int>& word_order);
// same value through the alternative expansion layout
rational amplitude_alt(const frobenius_data& a, const prestable_graph& g, int twist);

// amplitudes of every basis graph, level by level
std::vector<std::vector<rational>> partition_cochain(const frobenius_data& a,
                                                     const graph_complex& gc);

// pairing of the amplitude cochain with every boundary column; entries that
// fail to vanish are reported with their graph keys
struct obstruction {
    int level = 0;
    int index = 0;
    std::string key;
    rational value;
};
struct cocycle_report {
    bool ok = true;
    std::vector<obstruction> items;
};
cocycle_report verify_cocycle(const frobenius_data& a, const graph_complex& gc);

} // namespace gcx
