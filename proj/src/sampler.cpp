#include "treebij/sampler.hpp"

#include <stdexcept>

#include "treebij/bijection.hpp"

namespace treebij {

Endofunction sample_mapping(int n, SeededRng& rng) {
    if (n < 1) throw std::invalid_argument("sample_mapping: need n >= 1");
    const UniformBound full(static_cast<std::uint64_t>(n));
    std::vector<Vertex> image(static_cast<size_t>(n));
    for (Vertex x = 0; x < n; ++x)
        image[static_cast<size_t>(x)] = static_cast<Vertex>(full.draw(rng));
    return Endofunction(std::move(image));
}

Endofunction sample_restricted_mapping(int n, int k, SeededRng& rng) {
    if (n < 2 || k < 1 || k >= n)
        throw std::invalid_argument("sample_restricted_mapping: need 1 <= k < n");
    const UniformBound complement(static_cast<std::uint64_t>(n - k));
    const UniformBound full(static_cast<std::uint64_t>(n));
    std::vector<Vertex> image(static_cast<size_t>(n));
    for (Vertex x = 0; x < k; ++x)
        image[static_cast<size_t>(x)] = k + static_cast<Vertex>(complement.draw(rng));
    for (Vertex x = k; x < n; ++x)
        image[static_cast<size_t>(x)] = static_cast<Vertex>(full.draw(rng));
    return Endofunction(std::move(image));
}

LabeledTree sample_tree(int n, SeededRng& rng) {
    if (n < 1) throw std::invalid_argument("sample_tree: need n >= 1");
    return renyi_joyal(sample_mapping(n, rng)).tree;
}

LabeledTree sample_independent_tree(int n, int k, SeededRng& rng) {
    if (n < 2 || k < 1 || k >= n)
        throw std::invalid_argument("sample_independent_tree: need 1 <= k < n");
    return restricted_renyi_joyal(sample_restricted_mapping(n, k, rng), k).tree;
}

} // namespace treebij
