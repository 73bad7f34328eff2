#include "treebij/bijection.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace treebij {

namespace {

std::vector<Edge> noncore_as_edges(const CoreDecomposition& dec) {
    std::vector<Edge> edges;
    edges.reserve(dec.noncore_edges.size());
    for (const Edge& e : dec.noncore_edges) edges.push_back(make_edge(e.first, e.second));
    return edges;
}

// Assigns f(x) = neighbor toward the path for every vertex off the path.
// BFS layers outward from the path, so each off-path vertex receives its
// unique parent on the way back in; the assignment is order-independent.
void strip_toward_path(const LabeledTree& tree, const std::vector<Vertex>& path,
                       std::vector<Vertex>& image) {
    const auto adj = adjacency_lists(tree);
    std::vector<char> reached(static_cast<size_t>(tree.n()), 0);
    std::vector<Vertex> queue;
    queue.reserve(static_cast<size_t>(tree.n()));
    for (Vertex v : path) {
        reached[static_cast<size_t>(v)] = 1;
        queue.push_back(v);
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex w : adj[static_cast<size_t>(v)]) {
            if (!reached[static_cast<size_t>(w)]) {
                reached[static_cast<size_t>(w)] = 1;
                image[static_cast<size_t>(w)] = v;
                queue.push_back(w);
            }
        }
    }
}

} // namespace

DoublyRootedTree renyi_joyal(const Endofunction& f) {
    const CoreDecomposition dec = core_decompose(f);
    std::vector<Edge> edges = noncore_as_edges(dec);
    edges.reserve(static_cast<size_t>(f.n() > 0 ? f.n() - 1 : 0));
    for (const auto& cycle : dec.cycles)
        for (size_t j = 0; j + 1 < cycle.size(); ++j)
            edges.push_back(make_edge(cycle[j], cycle[j + 1]));
    for (size_t i = 0; i + 1 < dec.cycles.size(); ++i)
        edges.push_back(make_edge(dec.cycles[i].back(), dec.cycles[i + 1].front()));

    const Vertex root1 = dec.cycles.front().front();
    const Vertex root2 = dec.cycles.back().back();
    return DoublyRootedTree(LabeledTree(f.n(), std::move(edges)), root1, root2);
}

Endofunction renyi_joyal_inverse(const DoublyRootedTree& d) {
    const std::vector<Vertex> path = path_between(d.tree, d.root1, d.root2);
    std::vector<Vertex> image(static_cast<size_t>(d.tree.n()), -1);
    strip_toward_path(d.tree, path, image);

    // Cycle boundaries are the left-to-right minima of the path.
    size_t start = 0;
    Vertex running_min = path[0];
    auto close_cycle = [&](size_t end) { // segment [start, end)
        for (size_t j = start; j + 1 < end; ++j)
            image[static_cast<size_t>(path[j])] = path[j + 1];
        image[static_cast<size_t>(path[end - 1])] = path[start];
    };
    for (size_t i = 1; i < path.size(); ++i) {
        if (path[i] < running_min) {
            close_cycle(i);
            start = i;
            running_min = path[i];
        }
    }
    close_cycle(path.size());
    return Endofunction(std::move(image));
}

DoublyRootedTree joyal(const Endofunction& f) {
    const CoreDecomposition dec = core_decompose(f);
    std::vector<Vertex> sorted_core;
    sorted_core.reserve(static_cast<size_t>(dec.core_size()));
    for (Vertex x = 0; x < f.n(); ++x)
        if (dec.in_core[static_cast<size_t>(x)]) sorted_core.push_back(x);

    std::vector<Edge> edges = noncore_as_edges(dec);
    edges.reserve(static_cast<size_t>(f.n() > 0 ? f.n() - 1 : 0));
    for (size_t i = 0; i + 1 < sorted_core.size(); ++i)
        edges.push_back(make_edge(f(sorted_core[i]), f(sorted_core[i + 1])));

    const Vertex root1 = f(sorted_core.front());
    const Vertex root2 = f(sorted_core.back());
    return DoublyRootedTree(LabeledTree(f.n(), std::move(edges)), root1, root2);
}

Endofunction joyal_inverse(const DoublyRootedTree& d) {
    const std::vector<Vertex> path = path_between(d.tree, d.root1, d.root2);
    std::vector<Vertex> image(static_cast<size_t>(d.tree.n()), -1);
    strip_toward_path(d.tree, path, image);

    std::vector<Vertex> sorted_path(path);
    std::sort(sorted_path.begin(), sorted_path.end());
    for (size_t i = 0; i < path.size(); ++i)
        image[static_cast<size_t>(sorted_path[i])] = path[i];
    return Endofunction(std::move(image));
}

std::pair<DoublyRootedTree, DeltaReport>
map_to_tree_with_report(const Endofunction& f, BijectionVariant variant) {
    const CoreDecomposition dec = core_decompose(f);
    DoublyRootedTree d = variant == BijectionVariant::renyi_joyal ? renyi_joyal(f) : joyal(f);

    DeltaReport report;
    report.cycle_count = static_cast<int>(dec.cycles.size());
    report.core_size = dec.core_size();
    report.delta = symmetric_difference_size(edge_multiset(f), edge_multiset(d.tree));
    report.bound = variant == BijectionVariant::renyi_joyal
                       ? 2LL * report.cycle_count
                       : 2LL * report.core_size;
    if (report.delta > report.bound)
        throw std::logic_error("map_to_tree_with_report: edge-change bound violated");
    return {std::move(d), report};
}

DoublyRootedTree restricted_renyi_joyal(const Endofunction& f, int k,
                                        RestrictedDiagnostics* diag) {
    const int n = f.n();
    if (k < 1 || k >= n) throw std::invalid_argument("restricted_renyi_joyal: need 1 <= k < n");
    for (Vertex s = 0; s < k; ++s)
        if (f(s) < k)
            throw std::invalid_argument("restricted_renyi_joyal: map sends the prefix into itself");

    DoublyRootedTree d = renyi_joyal(f);

    const int n_map = unconnected_count(edge_multiset(f), k);
    const int n_tree = unconnected_count(d.tree, k);
    if (!is_independent_set(d.tree, k))
        throw std::logic_error("restricted_renyi_joyal: prefix not independent in output");
    if (d.root2 < k)
        throw std::logic_error("restricted_renyi_joyal: second root inside the prefix");
    if (std::abs(n_tree - n_map) > 1)
        throw std::logic_error("restricted_renyi_joyal: unconnected count moved by more than 1");

    if (diag) {
        const CoreDecomposition dec = core_decompose(f);
        int z = 0;
        for (const auto& cycle : dec.cycles) z += (cycle.front() >= k);
        diag->cycles_min_outside_s = z;
        diag->unconnected_map = n_map;
        diag->unconnected_tree = n_tree;
    }
    return d;
}

Endofunction restricted_renyi_joyal_inverse(const DoublyRootedTree& d, int k) {
    const int n = d.tree.n();
    if (k < 1 || k >= n)
        throw std::invalid_argument("restricted_renyi_joyal_inverse: need 1 <= k < n");
    if (!is_independent_set(d.tree, k))
        throw std::invalid_argument(
            "restricted_renyi_joyal_inverse: prefix is not independent in the tree");
    if (d.root2 < k)
        throw std::invalid_argument(
            "restricted_renyi_joyal_inverse: second root lies inside the prefix");

    Endofunction f = renyi_joyal_inverse(d);
    for (Vertex s = 0; s < k; ++s)
        if (f(s) < k)
            throw std::logic_error("restricted_renyi_joyal_inverse: inverse leaves the image set");
    return f;
}

} // namespace treebij
