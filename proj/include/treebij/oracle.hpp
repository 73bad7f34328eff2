#ifndef TREEBIJ_ORACLE_HPP
#define TREEBIJ_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treebij/analysis.hpp"
#include "treebij/bijection.hpp"
#include "treebij/graph_core.hpp"

namespace treebij {

// n^n explodes fast; enumeration refuses larger domains unless the caller
// passes allow_large.
inline constexpr int kMaxEnumerationN = 8;

// Yields every endofunction on n points exactly once, in lexicographic
// order of the image sequence. With restricted_k > 0, only maps sending
// the k-prefix outside itself.
class MappingEnumerator {
public:
    MappingEnumerator(int n, int restricted_k = 0, bool allow_large = false);

    std::optional<Endofunction> next();
    long long total_count() const { return total_; }

private:
    int n_ = 0;
    int k_ = 0;
    bool done_ = false;
    bool started_ = false;
    long long total_ = 0;
    std::vector<Vertex> image_;
};

template <typename Fn>
void for_each_mapping(int n, int restricted_k, Fn&& fn) {
    MappingEnumerator enumerator(n, restricted_k);
    while (auto f = enumerator.next()) fn(*f);
}

struct VerificationFailure {
    std::string input;    // 1-based image sequence of the offending map
    std::string property; // which check it violated
};

inline constexpr size_t kMaxRecordedFailures = 20;

struct VerificationReport {
    int n = 0;
    int k = 0;           // 0 for the unrestricted run
    std::string variant; // "renyi" | "joyal"
    long long maps_enumerated = 0;
    long long distinct_images = 0;
    long long distinct_trees = 0;
    long long expected_images = 0;
    long long expected_trees = 0;
    // delta - (2c - 2) -> number of maps; a single key means the edge
    // change is a constant function of the cycle count.
    std::map<long long, long long> delta_offset_histogram;
    long long rooting_multiplicity = 0; // restricted runs: common count, 0 if not constant
    long long failure_count = 0;
    std::vector<VerificationFailure> failures; // first kMaxRecordedFailures

    bool success() const { return failure_count == 0 && distinct_images == maps_enumerated; }
};

// Enumerates all n^n maps, checks the forward image is a valid tree, the
// inverse recovers the input, images are pairwise distinct, unrooted
// images cover all n^(n-2) trees, and the edge-change bound holds.
VerificationReport verify_bijection_exhaustive(int n, BijectionVariant variant);

// Same over restricted maps: checks prefix independence and second-root
// placement of every image, the unconnected-count transfer, distinct
// image and tree counts against (n-k)^k n^(n-k) and (n-k)^(k-1) n^(n-k-1),
// and that every unrooted tree appears exactly n(n-k) times.
VerificationReport verify_restricted_exhaustive(int n, int k);

enum class StatisticKind { unconnected, cycles, core_size };

// Exact pmf of a statistic under the uniform (or restricted-uniform) law
// by enumeration. unconnected requires k >= 1.
std::map<int, Rational> exact_statistic_distribution(int n, std::optional<int> k,
                                                     StatisticKind statistic);

} // namespace treebij

#endif // TREEBIJ_ORACLE_HPP
