#ifndef TREEBIJ_BIJECTION_HPP
#define TREEBIJ_BIJECTION_HPP

#include <utility>

#include "treebij/graph_core.hpp"

namespace treebij {

enum class BijectionVariant { joyal, renyi_joyal };

// Edge-change accounting for one application of a bijection.
// delta counts the multiset symmetric difference between the mapping's
// undirected edge multiset and the tree's edge set. bound is the variant
// guarantee: 2*cycle_count for renyi_joyal, 2*core_size for joyal.
struct DeltaReport {
    long long delta = 0;
    int cycle_count = 0;
    long long bound = 0;
    int core_size = 0;
};

// Extra counters for the restricted bijection; z is the number of cycles
// whose minimum lies outside the prefix S.
struct RestrictedDiagnostics {
    int cycles_min_outside_s = 0;
    int unconnected_map = 0;
    int unconnected_tree = 0;
};

// Cycles written min-first, concatenated in decreasing order of their
// minima, joined end-to-start to form the core path; non-core vertices
// keep their mapping edges. Roots are the two ends of the core path.
DoublyRootedTree renyi_joyal(const Endofunction& f);

// Inverse: off-path vertices map to their neighbor toward the root path;
// the path splits into cycles at its left-to-right minima (each cycle
// starts at its minimum and the minima strictly decrease along the path).
Endofunction renyi_joyal_inverse(const DoublyRootedTree& d);

// Core path visits f(s_1),...,f(s_m) for the sorted core s_1<...<s_m;
// roots are (f(s_1), f(s_m)).
DoublyRootedTree joyal(const Endofunction& f);

Endofunction joyal_inverse(const DoublyRootedTree& d);

std::pair<DoublyRootedTree, DeltaReport>
map_to_tree_with_report(const Endofunction& f, BijectionVariant variant);

// renyi_joyal restricted to maps sending S = {0..k-1} outside itself.
// Checks the guarantees on the output: S independent in the tree,
// root2 outside S, and the unconnected-to-S count moves by at most 1.
DoublyRootedTree restricted_renyi_joyal(const Endofunction& f, int k,
                                        RestrictedDiagnostics* diag = nullptr);

// Validates membership (S independent, root2 outside S) before inverting.
Endofunction restricted_renyi_joyal_inverse(const DoublyRootedTree& d, int k);

} // namespace treebij

#endif // TREEBIJ_BIJECTION_HPP
