#include "treebij/graph_core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace treebij {

namespace {

void check_vertex_range(int n, Vertex v, const char* what) {
    if (v < 0 || v >= n) throw std::out_of_range(std::string(what) + ": vertex out of range");
}

} // namespace

Endofunction::Endofunction(std::vector<Vertex> image) : image_(std::move(image)) {
    if (image_.empty()) throw std::invalid_argument("Endofunction: domain must be nonempty");
    const int n = static_cast<int>(image_.size());
    for (Vertex y : image_)
        if (y < 0 || y >= n) throw std::invalid_argument("Endofunction: image entry out of range");
}

Endofunction Endofunction::from_one_based(const std::vector<int>& image) {
    std::vector<Vertex> img;
    img.reserve(image.size());
    for (int y : image) img.push_back(y - 1);
    return Endofunction(std::move(img));
}

std::vector<int> Endofunction::to_one_based() const {
    std::vector<int> out;
    out.reserve(image_.size());
    for (Vertex y : image_) out.push_back(y + 1);
    return out;
}

void EdgeMultiset::add(Vertex u, Vertex v, int mult) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::out_of_range("EdgeMultiset::add: endpoint out of range");
    counts[make_edge(u, v)] += mult;
}

long long EdgeMultiset::total() const {
    long long sum = 0;
    for (const auto& [edge, mult] : counts) sum += mult;
    return sum;
}

int CoreDecomposition::core_size() const {
    int m = 0;
    for (char c : in_core) m += (c != 0);
    return m;
}

LabeledTree::LabeledTree(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (Edge& e : edges_)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges_.begin(), edges_.end());
    if (auto defect = validate_tree(n_, edges_))
        throw std::invalid_argument("LabeledTree: " + *defect);
}

DoublyRootedTree::DoublyRootedTree(LabeledTree t, Vertex r1, Vertex r2)
    : tree(std::move(t)), root1(r1), root2(r2) {
    check_vertex_range(tree.n(), root1, "DoublyRootedTree root1");
    check_vertex_range(tree.n(), root2, "DoublyRootedTree root2");
}

CoreDecomposition core_decompose(const Endofunction& f) {
    const int n = f.n();
    CoreDecomposition out;
    out.in_core.assign(static_cast<size_t>(n), 0);

    // 0 = unvisited, 1 = on the current walk, 2 = finished.
    std::vector<char> color(static_cast<size_t>(n), 0);
    std::vector<Vertex> walk;
    for (Vertex start = 0; start < n; ++start) {
        if (color[static_cast<size_t>(start)] != 0) continue;
        walk.clear();
        Vertex y = start;
        while (color[static_cast<size_t>(y)] == 0) {
            color[static_cast<size_t>(y)] = 1;
            walk.push_back(y);
            y = f(y);
        }
        if (color[static_cast<size_t>(y)] == 1) {
            // Ran into the current walk: y starts a new cycle.
            std::vector<Vertex> cycle;
            Vertex v = y;
            do {
                cycle.push_back(v);
                out.in_core[static_cast<size_t>(v)] = 1;
                v = f(v);
            } while (v != y);
            // Rotate so the cycle minimum comes first.
            auto min_it = std::min_element(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), min_it, cycle.end());
            out.cycles.push_back(std::move(cycle));
        }
        for (Vertex v : walk) color[static_cast<size_t>(v)] = 2;
    }

    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
                  return a.front() > b.front();
              });

    for (Vertex x = 0; x < n; ++x)
        if (!out.in_core[static_cast<size_t>(x)]) out.noncore_edges.emplace_back(x, f(x));
    return out;
}

int cycle_count(const Endofunction& f) {
    // Same walk as core_decompose, counting cycle discoveries without
    // materializing them.
    const int n = f.n();
    std::vector<char> color(static_cast<size_t>(n), 0);
    std::vector<Vertex> walk;
    int cycles = 0;
    for (Vertex start = 0; start < n; ++start) {
        if (color[static_cast<size_t>(start)] != 0) continue;
        walk.clear();
        Vertex y = start;
        while (color[static_cast<size_t>(y)] == 0) {
            color[static_cast<size_t>(y)] = 1;
            walk.push_back(y);
            y = f(y);
        }
        cycles += (color[static_cast<size_t>(y)] == 1);
        for (Vertex v : walk) color[static_cast<size_t>(v)] = 2;
    }
    return cycles;
}

bool verify_core_permutation(const Endofunction& f) {
    const CoreDecomposition dec = core_decompose(f);
    const int n = f.n();
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (Vertex x = 0; x < n; ++x) {
        if (!dec.in_core[static_cast<size_t>(x)]) continue;
        Vertex y = f(x);
        if (!dec.in_core[static_cast<size_t>(y)]) return false; // image leaves the core
        if (hit[static_cast<size_t>(y)]) return false;          // not injective
        hit[static_cast<size_t>(y)] = 1;
    }
    for (Vertex x = 0; x < n; ++x)
        if (dec.in_core[static_cast<size_t>(x)] != hit[static_cast<size_t>(x)]) return false;
    return true;
}

Endofunction collapse_to_complement(const Endofunction& g, int k) {
    const int n = g.n();
    if (k < 1 || k >= n) throw std::invalid_argument("collapse_to_complement: need 1 <= k < n");
    for (Vertex s = 0; s < k; ++s)
        if (g(s) < k)
            throw std::invalid_argument("collapse_to_complement: map sends the prefix into itself");
    std::vector<Vertex> image;
    image.reserve(static_cast<size_t>(n - k));
    for (Vertex x = k; x < n; ++x) {
        Vertex y = g(x);
        if (y < k) y = g(y); // hop over the prefix; lands outside it by the precondition
        image.push_back(y - k);
    }
    return Endofunction(std::move(image));
}

EdgeMultiset edge_multiset(const Endofunction& f) {
    EdgeMultiset out;
    out.n = f.n();
    for (Vertex x = 0; x < f.n(); ++x) out.add(x, f(x));
    return out;
}

EdgeMultiset edge_multiset(const LabeledTree& t) {
    EdgeMultiset out;
    out.n = t.n();
    for (const Edge& e : t.edges()) out.add(e.first, e.second);
    return out;
}

long long symmetric_difference_size(const EdgeMultiset& a, const EdgeMultiset& b) {
    if (a.n != b.n)
        throw std::invalid_argument("symmetric_difference_size: vertex counts differ");
    long long delta = 0;
    auto ia = a.counts.begin();
    auto ib = b.counts.begin();
    while (ia != a.counts.end() || ib != b.counts.end()) {
        if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
            delta += std::abs(static_cast<long long>(ia->second));
            ++ia;
        } else if (ia == a.counts.end() || ib->first < ia->first) {
            delta += std::abs(static_cast<long long>(ib->second));
            ++ib;
        } else {
            delta += std::abs(static_cast<long long>(ia->second) - ib->second);
            ++ia;
            ++ib;
        }
    }
    return delta;
}

namespace {

template <typename EdgeRange>
int unconnected_count_impl(int n, int k, const EdgeRange& edges) {
    if (k < 0 || k > n) throw std::invalid_argument("unconnected_count: k out of range");
    std::vector<char> touches_s(static_cast<size_t>(n), 0);
    for (const auto& e : edges) {
        const Vertex u = e.first, v = e.second;
        if (u == v) continue;
        if (u < k && v >= k) touches_s[static_cast<size_t>(v)] = 1;
        if (v < k && u >= k) touches_s[static_cast<size_t>(u)] = 1;
    }
    int count = 0;
    for (Vertex x = k; x < n; ++x) count += !touches_s[static_cast<size_t>(x)];
    return count;
}

} // namespace

int unconnected_count(const EdgeMultiset& g, int k) {
    std::vector<Edge> keys;
    keys.reserve(g.counts.size());
    for (const auto& [edge, mult] : g.counts) keys.push_back(edge);
    return unconnected_count_impl(g.n, k, keys);
}

int unconnected_count(const LabeledTree& t, int k) {
    return unconnected_count_impl(t.n(), k, t.edges());
}

std::optional<std::string> validate_tree(int n, const std::vector<Edge>& edges) {
    if (n < 1) return "vertex count must be positive";
    if (static_cast<long long>(edges.size()) != static_cast<long long>(n) - 1)
        return "edge count is not n-1";
    for (const Edge& e : edges) {
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
            return "edge endpoint out of range";
        if (e.first == e.second) return "self-loop";
    }

    // Normalize + sort a copy so duplicates are adjacent; the constructor
    // passes edges already in that form and the re-sort is then linear-ish.
    std::vector<Edge> sorted(edges);
    for (Edge& e : sorted)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return "duplicate edge";

    // Union-find connectivity; with n-1 distinct edges this also rules
    // out cycles.
    std::vector<Vertex> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](Vertex x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    int components = n;
    for (const Edge& e : sorted) {
        Vertex ra = find(e.first), rb = find(e.second);
        if (ra != rb) {
            parent[static_cast<size_t>(ra)] = rb;
            --components;
        }
    }
    if (components != 1) return "not connected";
    return std::nullopt;
}

std::vector<std::vector<Vertex>> adjacency_lists(const LabeledTree& t) {
    std::vector<std::vector<Vertex>> adj(static_cast<size_t>(t.n()));
    std::vector<int> degree(static_cast<size_t>(t.n()), 0);
    for (const Edge& e : t.edges()) {
        ++degree[static_cast<size_t>(e.first)];
        ++degree[static_cast<size_t>(e.second)];
    }
    for (Vertex v = 0; v < t.n(); ++v) adj[static_cast<size_t>(v)].reserve(static_cast<size_t>(degree[static_cast<size_t>(v)]));
    for (const Edge& e : t.edges()) {
        adj[static_cast<size_t>(e.first)].push_back(e.second);
        adj[static_cast<size_t>(e.second)].push_back(e.first);
    }
    return adj;
}

std::vector<Vertex> path_between(const LabeledTree& t, Vertex a, Vertex b) {
    check_vertex_range(t.n(), a, "path_between a");
    check_vertex_range(t.n(), b, "path_between b");
    if (a == b) return {a};

    const auto adj = adjacency_lists(t);
    std::vector<Vertex> parent(static_cast<size_t>(t.n()), -1);
    std::vector<Vertex> queue;
    queue.reserve(static_cast<size_t>(t.n()));
    queue.push_back(a);
    parent[static_cast<size_t>(a)] = a;
    for (size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        if (v == b) break;
        for (Vertex w : adj[static_cast<size_t>(v)]) {
            if (parent[static_cast<size_t>(w)] == -1) {
                parent[static_cast<size_t>(w)] = v;
                queue.push_back(w);
            }
        }
    }
    std::vector<Vertex> path;
    for (Vertex v = b; v != a; v = parent[static_cast<size_t>(v)]) path.push_back(v);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
}

bool is_independent_set(const LabeledTree& t, int k) {
    if (k < 0 || k > t.n()) throw std::invalid_argument("is_independent_set: k out of range");
    for (const Edge& e : t.edges())
        if (e.first < k && e.second < k) return false;
    return true;
}

namespace {

void check_permutation(int n, const std::vector<Vertex>& perm) {
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("relabel: permutation size mismatch");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (Vertex v : perm) {
        if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("relabel: not a permutation");
        seen[static_cast<size_t>(v)] = 1;
    }
}

} // namespace

Endofunction conjugate_by(const Endofunction& f, const std::vector<Vertex>& perm) {
    check_permutation(f.n(), perm);
    std::vector<Vertex> image(static_cast<size_t>(f.n()));
    for (Vertex x = 0; x < f.n(); ++x)
        image[static_cast<size_t>(perm[static_cast<size_t>(x)])] = perm[static_cast<size_t>(f(x))];
    return Endofunction(std::move(image));
}

LabeledTree relabel(const LabeledTree& t, const std::vector<Vertex>& perm) {
    check_permutation(t.n(), perm);
    std::vector<Edge> edges;
    edges.reserve(t.edges().size());
    for (const Edge& e : t.edges())
        edges.push_back(make_edge(perm[static_cast<size_t>(e.first)], perm[static_cast<size_t>(e.second)]));
    return LabeledTree(t.n(), std::move(edges));
}

} // namespace treebij
