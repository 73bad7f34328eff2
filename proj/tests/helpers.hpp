#ifndef TREEBIJ_TESTS_HELPERS_HPP
#define TREEBIJ_TESTS_HELPERS_HPP

#include <initializer_list>
#include <utility>
#include <vector>

#include "treebij/graph_core.hpp"

namespace treebij::testing {

// Test inputs are written 1-based to match the text formats.
inline Endofunction map1(std::initializer_list<int> image) {
    return Endofunction::from_one_based(std::vector<int>(image));
}

inline Edge e1(int u, int v) { return make_edge(u - 1, v - 1); }

inline std::vector<Edge> edges1(std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Edge> out;
    out.reserve(pairs.size());
    for (const auto& [u, v] : pairs) out.push_back(e1(u, v));
    return out;
}

inline std::vector<Vertex> verts1(std::initializer_list<int> vs) {
    std::vector<Vertex> out;
    out.reserve(vs.size());
    for (int v : vs) out.push_back(v - 1);
    return out;
}

inline LabeledTree tree1(int n, std::initializer_list<std::pair<int, int>> pairs) {
    return LabeledTree(n, edges1(pairs));
}

} // namespace treebij::testing

#endif // TREEBIJ_TESTS_HELPERS_HPP
