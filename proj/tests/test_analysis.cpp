#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "treebij/analysis.hpp"
#include "treebij/io.hpp"
#include "treebij/oracle.hpp"
#include "treebij/rng.hpp"

using namespace treebij;
using namespace treebij::testing;

TEST_CASE("expected_unconnected closed forms") {
    CHECK_EQ(expected_unconnected(2, 1).exact, doctest::Approx(0.0));
    CHECK_EQ(expected_unconnected(4, 1).exact, doctest::Approx(1.5));

    const auto big = expected_unconnected(10000, 2000);
    CHECK_GT(big.exact / big.asymptotic, 0.99);
    CHECK_LT(big.exact / big.asymptotic, 1.01);

    const auto params = concentration_parameters(2000, 400);
    CHECK_EQ(params.alpha, doctest::Approx(0.2));
    CHECK_EQ(params.rate, doctest::Approx(params.expected_asymptotic));
    CHECK_LE(params.expected_exact, 1600.0);

    CHECK_THROWS_AS(expected_unconnected(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(expected_unconnected(5, 5), std::invalid_argument);
}

TEST_CASE("exact rational mean matches exhaustive enumeration") {
    for (const auto& [n, k] : {std::pair{4, 1}, {5, 2}, {6, 3}}) {
        BigInt sum = 0;
        long long count = 0;
        for_each_mapping(n, k, [&](const Endofunction& f) {
            sum += mapping_unconnected_statistic(f, k);
            ++count;
        });
        CHECK_EQ(Rational(sum, count), expected_unconnected_exact_rational(n, k));
    }
    CHECK_EQ(expected_unconnected_exact_rational(4, 1), Rational(3, 2));
}

TEST_CASE("mapping_unconnected_statistic") {
    CHECK_EQ(mapping_unconnected_statistic(map1({2, 1}), 1), 0);
    CHECK_EQ(mapping_unconnected_statistic(map1({2, 3, 3}), 1), 1);
    CHECK_THROWS_AS(mapping_unconnected_statistic(map1({1, 2}), 1), std::invalid_argument);
}

TEST_CASE("the direct statistic agrees with the edge-multiset route") {
    for_each_mapping(5, 2, [](const Endofunction& f) {
        CHECK_EQ(mapping_unconnected_statistic(f, 2), unconnected_count(edge_multiset(f), 2));
    });
    for_each_mapping(4, 1, [](const Endofunction& f) {
        CHECK_EQ(mapping_unconnected_statistic(f, 1), unconnected_count(edge_multiset(f), 1));
    });
}

TEST_CASE("unconnected_tail_bounds formulas") {
    const TailBounds tiny = unconnected_tail_bounds(100, 20, 1e-12);
    CHECK_EQ(tiny.two_sided, doctest::Approx(1.0));
    CHECK_EQ(tiny.lower, doctest::Approx(1.0));
    CHECK_EQ(tiny.upper, doctest::Approx(1.0));

    const double rate = 2000.0 * 0.64 * std::exp(-0.25);
    const TailBounds b = unconnected_tail_bounds(2000, 400, 0.2);
    CHECK_EQ(b.two_sided, doctest::Approx(std::exp(-0.04 * rate / 3.0)).epsilon(1e-12));
    CHECK_EQ(b.lower, doctest::Approx(std::exp(-0.04 * rate / 2.0)).epsilon(1e-12));
    CHECK_EQ(b.upper, doctest::Approx(std::exp(-0.04 * rate / 2.2)).epsilon(1e-12));

    // Approaching s=1 from below, the lower bound tends to exp(-rate/2).
    const TailBounds near_one = unconnected_tail_bounds(2000, 400, 1.0 - 1e-9);
    CHECK_EQ(near_one.lower, doctest::Approx(std::exp(-rate / 2.0)).epsilon(1e-6));

    CHECK_THROWS_AS(unconnected_tail_bounds(2000, 400, 0.0), std::domain_error);
    CHECK_THROWS_AS(unconnected_tail_bounds(2000, 0, 0.5), std::invalid_argument);
}

TEST_CASE("binomial_chernoff_bounds") {
    CHECK_EQ(binomial_chernoff_bounds(300.0, 1.0).upper, doctest::Approx(std::exp(-100.0)));
    const TailBounds tiny = binomial_chernoff_bounds(300.0, 1e-12);
    CHECK_EQ(tiny.two_sided, doctest::Approx(1.0));
    CHECK_THROWS_AS(binomial_chernoff_bounds(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(binomial_chernoff_bounds(10.0, -1.0), std::domain_error);
}

TEST_CASE("simulated binomial tails respect the Chernoff bounds") {
    const long long trials = 100000;
    const int draws = 1000;
    const double mean = 300.0;
    std::vector<long long> histogram(static_cast<size_t>(draws + 1), 0);
    for (long long t = 0; t < trials; ++t) {
        SeededRng rng(4242, static_cast<std::uint64_t>(t));
        const UniformBound decimal(10);
        int successes = 0;
        for (int i = 0; i < draws; ++i) successes += (decimal.draw(rng) < 3);
        ++histogram[static_cast<size_t>(successes)];
    }
    for (double s = 0.1; s <= 1.001; s += 0.1) {
        long long above = 0, below = 0;
        for (size_t v = 0; v < histogram.size(); ++v) {
            if (static_cast<double>(v) > (1.0 + s) * mean) above += histogram[v];
            if (static_cast<double>(v) < (1.0 - s) * mean) below += histogram[v];
        }
        const TailBounds b = binomial_chernoff_bounds(mean, s);
        CHECK_LE(static_cast<double>(above) / trials, b.upper);
        CHECK_LE(static_cast<double>(below) / trials, b.lower);
    }
}

TEST_CASE("azuma_comparison_bound") {
    CHECK_EQ(azuma_comparison_bound(100, 20, 1e-12), doctest::Approx(2.0));

    // At alpha near zero the correction factors disappear.
    const double t = 1e-3;
    const long long n = 1000000;
    CHECK_EQ(azuma_comparison_bound(n, 1, t),
             doctest::Approx(2.0 * std::exp(-static_cast<double>(n - 1) * t * t / 2.0))
                 .epsilon(0.01));

    // The martingale route is weaker than the direct bounds throughout
    // (0, 1] at alpha = 0.2; that gap is the point of the comparison.
    for (long long nn : {100LL, 1000LL, 2000LL}) {
        const long long k = nn / 5;
        for (double s = 0.05; s <= 1.0001; s += 0.05)
            CHECK_GT(azuma_comparison_bound(nn, k, s),
                     unconnected_tail_bounds(nn, k, s).two_sided);
    }
    CHECK_GT(azuma_comparison_bound(2000, 400, 0.2),
             unconnected_tail_bounds(2000, 400, 0.2).two_sided);
}

TEST_CASE("cycle_tail_bound") {
    CHECK_EQ(cycle_tail_bound(162755, 1.0), doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
    CHECK_EQ(cycle_tail_bound(100, 1e-12), doctest::Approx(1.0));
    CHECK_EQ(cycle_tail_bound_restricted(10000, 9000, 1.0),
             doctest::Approx(std::exp(-(1.0 / 3.0) * std::log(1000.0) / 4.0)).epsilon(1e-12));
    CHECK_THROWS_AS(cycle_tail_bound(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(cycle_tail_bound(100, 0.0), std::domain_error);
}

TEST_CASE("core_size_pmf exact values") {
    CHECK_EQ(core_size_pmf_exact(1, 1), Rational(1));
    CHECK_EQ(core_size_pmf_exact(2, 1), Rational(1, 2));
    CHECK_EQ(core_size_pmf_exact(2, 2), Rational(1, 2));

    for (int n : {1, 2, 3, 7, 20, 40, 170}) {
        Rational sum = 0;
        for (int k = 1; k <= n; ++k) sum += core_size_pmf_exact(n, k);
        CHECK_EQ(sum, Rational(1));
    }
    CHECK_THROWS_AS(core_size_pmf_exact(171, 1), std::invalid_argument);
}

TEST_CASE("core_size_pmf matches the exhaustive histogram at n=6") {
    const auto pmf = exact_statistic_distribution(6, std::nullopt, StatisticKind::core_size);
    for (int k = 1; k <= 6; ++k) CHECK_EQ(pmf.at(k), core_size_pmf_exact(6, k));
}

TEST_CASE("log-space pmf agrees with the exact rationals") {
    for (int n : {10, 50, 170}) {
        for (int k = 1; k <= n; k += std::max(1, n / 7)) {
            const double exact = core_size_pmf_exact(n, k).convert_to<double>();
            CHECK_EQ(core_size_pmf(n, k), doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("concentration experiment basics") {
    const auto one = run_concentration_experiment(50, 10, 1, {0.1, 0.5}, 7, 1);
    for (const auto& row : one.rows) {
        CHECK((row.emp_lower == 0.0 || row.emp_lower == 1.0));
        CHECK((row.emp_upper == 0.0 || row.emp_upper == 1.0));
        CHECK((row.emp_two_sided == 0.0 || row.emp_two_sided == 1.0));
    }

    const auto report = run_concentration_experiment(100, 20, 20000, {0.1, 0.2, 0.4, 0.8}, 11, 1);
    const double expected = expected_unconnected(100, 20).exact;
    CHECK_EQ(report.summary.reference_mean, doctest::Approx(expected));
    const double sd = std::sqrt(report.summary.variance / static_cast<double>(report.trials));
    CHECK_LE(std::abs(report.summary.mean - expected), 1.0 + 3.0 * sd);
    for (const auto& row : report.rows) {
        const auto se = [&](double p) {
            return std::sqrt(std::max(p * (1 - p), 1.0 / report.trials) / report.trials);
        };
        CHECK_LE(row.emp_two_sided, row.bound_two_sided + 3 * se(row.emp_two_sided));
        CHECK_LE(row.emp_lower, row.bound_lower + 3 * se(row.emp_lower));
        CHECK_LE(row.emp_upper, row.bound_upper + 3 * se(row.emp_upper));
    }
}

TEST_CASE("reports are identical for any worker count") {
    const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5};
    const auto w1 = run_concentration_experiment(100, 20, 2000, grid, 99, 1);
    const auto w3 = run_concentration_experiment(100, 20, 2000, grid, 99, 3);
    CHECK_EQ(experiment_report_to_csv(w1), experiment_report_to_csv(w3));

    const auto c1 = run_cycle_experiment(100, 1000, {0.5, 1.0}, 5, 1);
    const auto c4 = run_cycle_experiment(100, 1000, {0.5, 1.0}, 5, 4);
    CHECK_EQ(experiment_report_to_csv(c1), experiment_report_to_csv(c4));

    const auto n1 = na_covariance_check(10, 3, 50000, 13, 1);
    const auto n2 = na_covariance_check(10, 3, 50000, 13, 2);
    CHECK_EQ(n1.max_covariance, n2.max_covariance);
}

TEST_CASE("cycle experiment, unrestricted and restricted") {
    const auto plain = run_cycle_experiment(200, 2000, {1.0}, 21, 1);
    CHECK_EQ(plain.collapse_mismatches, 0);
    REQUIRE_EQ(plain.rows.size(), 1);
    CHECK_LE(plain.rows[0].emp_upper, plain.slack * plain.rows[0].bound_upper);
    CHECK_EQ(plain.rows[0].bound_upper, doctest::Approx(cycle_tail_bound(200, 1.0)));
    // Unused columns stay vacuous.
    CHECK_EQ(plain.rows[0].emp_lower, 0.0);
    CHECK_EQ(plain.rows[0].bound_lower, 1.0);
    CHECK_EQ(plain.rows[0].azuma_bound, 1.0);

    const auto restricted = run_cycle_experiment(100, 2000, {1.0}, 22, 1, 50);
    CHECK_EQ(restricted.collapse_mismatches, 0); // per-trial collapse identity
    CHECK_EQ(restricted.rows[0].bound_upper, doctest::Approx(cycle_tail_bound(50, 1.0)));

    // A very large threshold empties the tail.
    const auto far = run_cycle_experiment(100, 500, {50.0}, 23, 1);
    CHECK_EQ(far.rows[0].emp_upper, 0.0);
}

TEST_CASE("na_covariance_check") {
    const auto vacuous = na_covariance_check(2, 1, 100, 3, 1);
    CHECK(vacuous.vacuous);
    CHECK_EQ(vacuous.max_covariance, 0.0);

    const auto report = na_covariance_check(10, 3, 1000000, 12, 1);
    CHECK_FALSE(report.vacuous);
    CHECK_LE(report.max_covariance, 3e-3);
    CHECK_THROWS_AS(na_covariance_check(200, 3, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("exact pairwise covariance is nonpositive, n=4 k=1") {
    // T * E[I_x I_y] <= (T E[I_x]) (T E[I_y]) over all 192 restricted maps.
    const int n = 4, k = 1;
    long long total = 0;
    long long singles[3] = {0, 0, 0};
    long long pairs[3][3] = {};
    for_each_mapping(n, k, [&](const Endofunction& f) {
        ++total;
        char indicator[3];
        for (int i = 0; i < 3; ++i) {
            const Vertex x = k + i;
            bool in_image = false;
            for (Vertex s = 0; s < k; ++s) in_image = in_image || (f(s) == x);
            indicator[i] = (!in_image && f(x) >= k);
            if (indicator[i]) ++singles[i];
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (indicator[i] && indicator[j]) ++pairs[i][j];
    });
    CHECK_EQ(total, 192);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK_LE(total * pairs[i][j], singles[i] * singles[j]);
}
