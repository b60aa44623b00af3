#pragma once

#include <vector>

#include "gcx/canon.hpp"
#include "gcx/halfedge.hpp"
#include "gcx/ribbon.hpp"

namespace gcx {

// parity of a permutation given as a sequence, +1 or -1
int perm_sign(const std::vector<int>& perm);

// sign of reordering [0..n-1] into `order` where item x carries the parity
// par[x] of its decoration line besides being odd itself: a crossing of x and
// y costs (-1)^(1 + par[x] par[y])
int graded_reorder_sign(const std::vector<int>& order, const std::vector<int>& par);

// action of an isomorphism (a flag bijection g -> h) on the reference
// d-orientation.  the reference orientation of a stored graph: edges ordered
// by smaller flag, vertices in storage order, every edge directed from its
// smaller flag, blocks in storage order.
int orientation_sign(const comm_graph& g, const comm_graph& h,
                     const std::vector<int>& flag_map, int d);
int orientation_sign(const prestable_graph& g, const prestable_graph& h,
                     const std::vector<int>& flag_map, int d);

// a class vanishes when an automorphism reverses its orientation or a vertex
// decoration has a sign-reversing symmetry of its own: positive genus labels
// in the twisted commutative case, two free circles in the twisted ribbon one
bool orientation_vanishes(const comm_canon& cf, int d);
bool orientation_vanishes(const prestable_canon& cf, int d);

// sign of the boundary term contracting the edge at `flag`, relative to the
// reference orientation of the constructed result
int contraction_sign(const comm_graph& g, const comm_contraction& c, int flag, int d);
int contraction_sign(const prestable_graph& g, const ribbon_contraction& c, int flag,
                     int d);

// two-colored graphs carry an orientation on the black edges only, ordered by
// smaller flag like the untwisted case
int orientation_sign(const bv_graph& g, const bv_graph& h,
                     const std::vector<int>& flag_map);
bool orientation_vanishes(const bv_canon& cf);
// (-1)^(position of the edge at `flag` among the black edges)
int black_position_sign(const bv_graph& b, int flag);

} // namespace gcx
