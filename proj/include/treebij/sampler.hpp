#ifndef TREEBIJ_SAMPLER_HPP
#define TREEBIJ_SAMPLER_HPP

#include "treebij/graph_core.hpp"
#include "treebij/rng.hpp"

namespace treebij {

// f(x) uniform on {0..n-1}, independent across x.
Endofunction sample_mapping(int n, SeededRng& rng);

// Conditional law of a uniform mapping given that the prefix S = {0..k-1}
// maps outside itself: f(x) uniform on the complement for x in S, uniform
// on everything for x outside S. No rejection involved.
Endofunction sample_restricted_mapping(int n, int k, SeededRng& rng);

// Uniform labelled tree on n vertices in O(n): push a uniform mapping
// through the cycle-joining bijection and drop the roots.
LabeledTree sample_tree(int n, SeededRng& rng);

// Uniform over labelled trees in which the prefix S = {0..k-1} is an
// independent set. Every such tree admits the same number n*(n-k) of
// valid rootings, so dropping the roots keeps the law uniform.
LabeledTree sample_independent_tree(int n, int k, SeededRng& rng);

} // namespace treebij

#endif // TREEBIJ_SAMPLER_HPP
