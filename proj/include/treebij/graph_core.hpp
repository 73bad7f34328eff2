#ifndef TREEBIJ_GRAPH_CORE_HPP
#define TREEBIJ_GRAPH_CORE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treebij {

// Vertices are 0-based internally; all text/JSON formats and the CLI use
// 1-based labels at the boundary.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // normalized u <= v for undirected edges

inline Edge make_edge(Vertex u, Vertex v) { return u <= v ? Edge{u, v} : Edge{v, u}; }

// A total map f on {0,...,n-1}, stored as its image sequence.
class Endofunction {
public:
    explicit Endofunction(std::vector<Vertex> image);
    static Endofunction from_one_based(const std::vector<int>& image);

    int n() const { return static_cast<int>(image_.size()); }
    Vertex operator()(Vertex x) const { return image_[static_cast<size_t>(x)]; }
    const std::vector<Vertex>& image() const { return image_; }
    std::vector<int> to_one_based() const;

    bool operator==(const Endofunction&) const = default;

private:
    std::vector<Vertex> image_;
};

// Undirected edge multiset; self-loops allowed, multiplicities tracked.
struct EdgeMultiset {
    int n = 0;
    std::map<Edge, int> counts;

    void add(Vertex u, Vertex v, int mult = 1);
    long long total() const;
};

// Cyclic part of a mapping. Cycles are written minimum-first with
// consecutive entries following f, and the cycle list is ordered by
// strictly decreasing minima. noncore_edges holds (x, f(x)) for every
// non-cyclic x, in ascending x.
struct CoreDecomposition {
    std::vector<char> in_core;
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Edge> noncore_edges;

    int n() const { return static_cast<int>(in_core.size()); }
    int core_size() const;
};

// Labelled tree on {0,...,n-1}: connected, acyclic, no self-loops.
// Edges are stored normalized (u < v) and sorted lexicographically, so
// equality and canonical serialization are direct.
class LabeledTree {
public:
    LabeledTree(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const LabeledTree&) const = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

struct DoublyRootedTree {
    LabeledTree tree;
    Vertex root1 = 0;
    Vertex root2 = 0;

    DoublyRootedTree(LabeledTree t, Vertex r1, Vertex r2);

    bool operator==(const DoublyRootedTree&) const = default;
};

// Core of a mapping via an iterate-until-marked walk with three-state
// marking, so every vertex is processed a bounded number of times (O(n)
// total even when implemented over adversarial inputs).
CoreDecomposition core_decompose(const Endofunction& f);

int cycle_count(const Endofunction& f);

// Self-check: f restricted to its core must be a bijection of the core
// onto itself.
bool verify_core_permutation(const Endofunction& f);

// For g with g({0..k-1}) in the complement, removes the first k vertices
// by short-circuiting through them and relabels the rest down by k.
// Preserves the cycle count.
Endofunction collapse_to_complement(const Endofunction& g, int k);

EdgeMultiset edge_multiset(const Endofunction& f);
EdgeMultiset edge_multiset(const LabeledTree& t);

// Multiset symmetric difference size: sum over pairs of |mult_a - mult_b|.
long long symmetric_difference_size(const EdgeMultiset& a, const EdgeMultiset& b);

// Number of vertices outside S = {0..k-1} with no edge into S.
// Self-loops never count as adjacency to S.
int unconnected_count(const EdgeMultiset& g, int k);
int unconnected_count(const LabeledTree& t, int k);

// std::nullopt when (n, edges) is a valid labelled tree, otherwise a
// diagnostic naming the first violated property.
std::optional<std::string> validate_tree(int n, const std::vector<Edge>& edges);

// Unique simple path from a to b, inclusive; a == b gives (a).
std::vector<Vertex> path_between(const LabeledTree& t, Vertex a, Vertex b);

// True when no tree edge has both endpoints in {0..k-1}.
bool is_independent_set(const LabeledTree& t, int k);

// Relabelling helpers: perm maps old label x to new label perm[x].
// Operations in this library fix S as a prefix; arbitrary subsets are
// handled by conjugating with a permutation that moves them to a prefix.
Endofunction conjugate_by(const Endofunction& f, const std::vector<Vertex>& perm);
LabeledTree relabel(const LabeledTree& t, const std::vector<Vertex>& perm);

std::vector<std::vector<Vertex>> adjacency_lists(const LabeledTree& t);

} // namespace treebij

#endif // TREEBIJ_GRAPH_CORE_HPP
