#include "treebij/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace treebij {

namespace {

long long ipow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::string describe_map(const Endofunction& f) {
    std::ostringstream out;
    const auto img = f.to_one_based();
    for (size_t i = 0; i < img.size(); ++i) {
        if (i) out << ' ';
        out << img[i];
    }
    return out.str();
}

// Packed canonical keys for n <= 8: edges are sorted, each edge needs
// 6 bits, roots 3 bits each; everything fits in 64 bits.
std::uint64_t tree_key(const LabeledTree& t) {
    std::uint64_t key = 0;
    for (const Edge& e : t.edges())
        key = (key << 6) | static_cast<std::uint64_t>(e.first * 8 + e.second);
    return key;
}

std::uint64_t rooted_key(const DoublyRootedTree& d) {
    return (tree_key(d.tree) << 6)
           | static_cast<std::uint64_t>(d.root1 * 8 + d.root2);
}

void record_failure(VerificationReport& report, const Endofunction& f,
                    const std::string& property) {
    ++report.failure_count;
    if (report.failures.size() < kMaxRecordedFailures)
        report.failures.push_back({describe_map(f), property});
}

} // namespace

MappingEnumerator::MappingEnumerator(int n, int restricted_k, bool allow_large)
    : n_(n), k_(restricted_k) {
    if (n < 1) throw std::invalid_argument("MappingEnumerator: need n >= 1");
    if (n > kMaxEnumerationN && !allow_large)
        throw std::invalid_argument("MappingEnumerator: n too large for exhaustive enumeration");
    if (k_ < 0 || (k_ > 0 && k_ >= n_))
        throw std::invalid_argument("MappingEnumerator: need 0 <= k < n");
    image_.assign(static_cast<size_t>(n_), 0);
    for (Vertex x = 0; x < k_; ++x) image_[static_cast<size_t>(x)] = k_;
    total_ = k_ > 0 ? ipow(n_ - k_, k_) * ipow(n_, n_ - k_) : ipow(n_, n_);
}

std::optional<Endofunction> MappingEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        return Endofunction(image_);
    }
    // Odometer increment, least significant position last; positions in
    // the prefix range over {k..n-1}, the rest over {0..n-1}.
    for (int x = n_ - 1; x >= 0; --x) {
        const Vertex lo = x < k_ ? k_ : 0;
        if (image_[static_cast<size_t>(x)] + 1 < n_) {
            ++image_[static_cast<size_t>(x)];
            return Endofunction(image_);
        }
        image_[static_cast<size_t>(x)] = lo;
    }
    done_ = true;
    return std::nullopt;
}

VerificationReport verify_bijection_exhaustive(int n, BijectionVariant variant) {
    if (n > 7) throw std::invalid_argument("verify_bijection_exhaustive: need n <= 7");
    VerificationReport report;
    report.n = n;
    report.variant = variant == BijectionVariant::renyi_joyal ? "renyi" : "joyal";
    report.expected_images = ipow(n, n);
    report.expected_trees = n >= 2 ? ipow(n, n - 2) : 1;

    std::unordered_set<std::uint64_t> images;
    std::unordered_set<std::uint64_t> trees;
    images.reserve(static_cast<size_t>(report.expected_images) * 2);

    for_each_mapping(n, 0, [&](const Endofunction& f) {
        ++report.maps_enumerated;
        try {
            const auto [d, delta] = map_to_tree_with_report(f, variant);
            if (delta.delta > delta.bound)
                record_failure(report, f, "edge-change bound violated");
            ++report.delta_offset_histogram[delta.delta - (2LL * delta.cycle_count - 2)];

            const Endofunction back = variant == BijectionVariant::renyi_joyal
                                          ? renyi_joyal_inverse(d)
                                          : joyal_inverse(d);
            if (!(back == f)) record_failure(report, f, "inverse does not recover the map");

            if (!images.insert(rooted_key(d)).second)
                record_failure(report, f, "duplicate doubly rooted image");
            trees.insert(tree_key(d.tree));
        } catch (const std::exception& e) {
            record_failure(report, f, std::string("exception: ") + e.what());
        }
    });

    report.distinct_images = static_cast<long long>(images.size());
    report.distinct_trees = static_cast<long long>(trees.size());
    if (report.maps_enumerated != report.expected_images)
        ++report.failure_count; // enumeration itself went wrong
    if (report.distinct_trees != report.expected_trees)
        ++report.failure_count;
    return report;
}

VerificationReport verify_restricted_exhaustive(int n, int k) {
    if (n > 7) throw std::invalid_argument("verify_restricted_exhaustive: need n <= 7");
    if (k < 1 || k >= n) throw std::invalid_argument("verify_restricted_exhaustive: need 1 <= k < n");
    VerificationReport report;
    report.n = n;
    report.k = k;
    report.variant = "renyi";
    report.expected_images = ipow(n - k, k) * ipow(n, n - k);
    report.expected_trees = ipow(n - k, k - 1) * ipow(n, n - k - 1);

    std::unordered_set<std::uint64_t> images;
    std::unordered_map<std::uint64_t, long long> tree_multiplicity;
    images.reserve(static_cast<size_t>(report.expected_images) * 2);

    for_each_mapping(n, k, [&](const Endofunction& f) {
        ++report.maps_enumerated;
        try {
            const auto [d, delta] = map_to_tree_with_report(f, BijectionVariant::renyi_joyal);
            if (delta.delta > delta.bound)
                record_failure(report, f, "edge-change bound violated");
            ++report.delta_offset_histogram[delta.delta - (2LL * delta.cycle_count - 2)];

            if (!is_independent_set(d.tree, k))
                record_failure(report, f, "prefix not independent in image tree");
            if (d.root2 < k) record_failure(report, f, "second root inside the prefix");

            const int n_map = mapping_unconnected_statistic(f, k);
            const int n_tree = unconnected_count(d.tree, k);
            if (n_tree - n_map > 1 || n_map - n_tree > 1)
                record_failure(report, f, "unconnected count moved by more than 1");

            const Endofunction back = restricted_renyi_joyal_inverse(d, k);
            if (!(back == f)) record_failure(report, f, "inverse does not recover the map");

            if (!images.insert(rooted_key(d)).second)
                record_failure(report, f, "duplicate doubly rooted image");
            ++tree_multiplicity[tree_key(d.tree)];
        } catch (const std::exception& e) {
            record_failure(report, f, std::string("exception: ") + e.what());
        }
    });

    report.distinct_images = static_cast<long long>(images.size());
    report.distinct_trees = static_cast<long long>(tree_multiplicity.size());
    if (report.maps_enumerated != report.expected_images) ++report.failure_count;
    if (report.distinct_trees != report.expected_trees) ++report.failure_count;

    // Every unrooted image must occur with the same multiplicity n(n-k):
    // root1 ranges over all vertices, root2 over the complement.
    const long long expected_multiplicity = static_cast<long long>(n) * (n - k);
    report.rooting_multiplicity = expected_multiplicity;
    for (const auto& [key, count] : tree_multiplicity) {
        if (count != expected_multiplicity) {
            report.rooting_multiplicity = 0;
            ++report.failure_count;
            break;
        }
    }
    return report;
}

std::map<int, Rational> exact_statistic_distribution(int n, std::optional<int> k,
                                                     StatisticKind statistic) {
    if (n > 7) throw std::invalid_argument("exact_statistic_distribution: need n <= 7");
    if (statistic == StatisticKind::unconnected && (!k || *k < 1))
        throw std::invalid_argument("exact_statistic_distribution: unconnected needs k >= 1");
    const int restricted_k = k.value_or(0);

    std::map<int, long long> counts;
    long long total = 0;
    for_each_mapping(n, restricted_k, [&](const Endofunction& f) {
        ++total;
        int value = 0;
        switch (statistic) {
        case StatisticKind::unconnected:
            value = mapping_unconnected_statistic(f, restricted_k);
            break;
        case StatisticKind::cycles:
            value = cycle_count(f);
            break;
        case StatisticKind::core_size:
            value = core_decompose(f).core_size();
            break;
        }
        ++counts[value];
    });

    std::map<int, Rational> pmf;
    for (const auto& [value, count] : counts) pmf[value] = Rational(count, total);
    return pmf;
}

} // namespace treebij
