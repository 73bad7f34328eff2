#include <doctest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "treebij/io.hpp"
#include "treebij/oracle.hpp"

using namespace treebij;
using namespace treebij::testing;

TEST_CASE("enumeration order and counts") {
    MappingEnumerator two(2);
    CHECK_EQ(two.total_count(), 4);
    CHECK_EQ(*two.next(), map1({1, 1}));
    CHECK_EQ(*two.next(), map1({1, 2}));
    CHECK_EQ(*two.next(), map1({2, 1}));
    CHECK_EQ(*two.next(), map1({2, 2}));
    CHECK_FALSE(two.next().has_value());

    long long restricted = 0;
    for_each_mapping(3, 1, [&](const Endofunction& f) {
        ++restricted;
        CHECK_GE(f(0), 1);
    });
    CHECK_EQ(restricted, 18); // (3-1)^1 * 3^2

    long long all6 = 0;
    for_each_mapping(6, 0, [&](const Endofunction&) { ++all6; });
    CHECK_EQ(all6, 46656);

    CHECK_THROWS_AS(MappingEnumerator(9), std::invalid_argument);
    MappingEnumerator big(9, 0, /*allow_large=*/true);
    CHECK_EQ(*big.next(), map1({1, 1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST_CASE("verify_bijection_exhaustive") {
    const VerificationReport n4 = verify_bijection_exhaustive(4, BijectionVariant::renyi_joyal);
    CHECK(n4.success());
    CHECK_EQ(n4.maps_enumerated, 256);
    CHECK_EQ(n4.distinct_images, 256);
    CHECK_EQ(n4.distinct_trees, 16);

    const VerificationReport n4j = verify_bijection_exhaustive(4, BijectionVariant::joyal);
    CHECK(n4j.success());
    CHECK_EQ(n4j.distinct_trees, 16);

    const VerificationReport n1 = verify_bijection_exhaustive(1, BijectionVariant::renyi_joyal);
    CHECK(n1.success());
    CHECK_EQ(n1.maps_enumerated, 1);
    CHECK_EQ(n1.distinct_trees, 1);

    const VerificationReport n5 = verify_bijection_exhaustive(5, BijectionVariant::renyi_joyal);
    CHECK(n5.success());
    CHECK_EQ(n5.distinct_images, 3125);
    CHECK_EQ(n5.distinct_trees, 125);

    CHECK_THROWS_AS(verify_bijection_exhaustive(8, BijectionVariant::renyi_joyal),
                    std::invalid_argument);
}

TEST_CASE("the edge change is the same single value for every cycle count") {
    for (int n = 1; n <= 5; ++n) {
        const VerificationReport report =
            verify_bijection_exhaustive(n, BijectionVariant::renyi_joyal);
        REQUIRE_EQ(report.delta_offset_histogram.size(), 1);
        CHECK_EQ(report.delta_offset_histogram.begin()->first, 1); // delta = 2c - 1
    }
}

TEST_CASE("verify_restricted_exhaustive") {
    const VerificationReport r42 = verify_restricted_exhaustive(4, 2);
    CHECK(r42.success());
    CHECK_EQ(r42.maps_enumerated, 64);
    CHECK_EQ(r42.distinct_trees, 8);
    CHECK_EQ(r42.rooting_multiplicity, 8); // n(n-k) = 4*2

    const VerificationReport r32 = verify_restricted_exhaustive(3, 2);
    CHECK(r32.success());
    CHECK_EQ(r32.distinct_trees, 1); // only the path 1-3-2

    const VerificationReport r52 = verify_restricted_exhaustive(5, 2);
    CHECK(r52.success());
    CHECK_EQ(r52.maps_enumerated, 1125);
    CHECK_EQ(r52.distinct_trees, 75); // (5-2)^1 * 5^2

    CHECK_THROWS_AS(verify_restricted_exhaustive(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(verify_restricted_exhaustive(4, 4), std::invalid_argument);
}

TEST_CASE("every independent-prefix tree has exactly n(n-k) rootings, n<=6 k<=3") {
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= std::min(3, n - 1); ++k) {
            const VerificationReport report = verify_restricted_exhaustive(n, k);
            CHECK(report.success());
            CHECK_EQ(report.rooting_multiplicity, static_cast<long long>(n) * (n - k));
        }
    }
}

TEST_CASE("exact_statistic_distribution") {
    const auto core2 = exact_statistic_distribution(2, std::nullopt, StatisticKind::core_size);
    CHECK_EQ(core2.size(), 2);
    CHECK_EQ(core2.at(1), Rational(1, 2));
    CHECK_EQ(core2.at(2), Rational(1, 2));

    const auto unconnected = exact_statistic_distribution(2, 1, StatisticKind::unconnected);
    CHECK_EQ(unconnected.size(), 1);
    CHECK_EQ(unconnected.at(0), Rational(1));

    // Mean of the cycle distribution against a direct tally.
    const auto cycles3 = exact_statistic_distribution(3, std::nullopt, StatisticKind::cycles);
    Rational pmf_mean = 0;
    for (const auto& [value, mass] : cycles3) pmf_mean += Rational(value) * mass;
    long long cycle_sum = 0;
    for_each_mapping(3, 0, [&](const Endofunction& f) { cycle_sum += cycle_count(f); });
    CHECK_EQ(pmf_mean, Rational(cycle_sum, 27));

    // Mean of the unconnected statistic against the closed form.
    const auto pmf52 = exact_statistic_distribution(5, 2, StatisticKind::unconnected);
    Rational mean52 = 0;
    for (const auto& [value, mass] : pmf52) mean52 += Rational(value) * mass;
    CHECK_EQ(mean52, expected_unconnected_exact_rational(5, 2));

    CHECK_THROWS_AS(exact_statistic_distribution(3, std::nullopt, StatisticKind::unconnected),
                    std::invalid_argument);
}

TEST_CASE("verification report serializes with its counts") {
    const VerificationReport report = verify_restricted_exhaustive(4, 2);
    const nlohmann::json j = verification_report_to_json(report);
    CHECK_EQ(j.at("maps_enumerated").get<long long>(), 64);
    CHECK_EQ(j.at("distinct_trees").get<long long>(), 8);
    CHECK_EQ(j.at("k").get<int>(), 2);
    CHECK(j.at("success").get<bool>());
    CHECK_EQ(j.at("rooting_multiplicity").get<long long>(), 8);
    CHECK(j.at("failures").empty());
}
