#ifndef TREEBIJ_ANALYSIS_HPP
#define TREEBIJ_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treebij/graph_core.hpp"

namespace treebij {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Closed-form quantities for the number N of vertices outside the prefix
// S = {1..k} with no neighbor in S, under the uniform-tree law conditioned
// on S independent. expected_exact is the mean of the mapping-side
// statistic; the tree statistic differs from it by at most 1 per instance.
struct ConcentrationBounds {
    long long n = 0;
    long long k = 0;
    double alpha = 0.0;
    double expected_exact = 0.0;      // (n-k)(1 - 1/(n-k))^k (1 - k/n)
    double expected_asymptotic = 0.0; // n(1-a)^2 e^(-a/(1-a))
    double rate = 0.0;                // exponent scale, equals expected_asymptotic
};

ConcentrationBounds concentration_parameters(long long n, long long k);

struct ExpectedUnconnected {
    double exact = 0.0;
    double asymptotic = 0.0;
};

ExpectedUnconnected expected_unconnected(long long n, long long k);
Rational expected_unconnected_exact_rational(long long n, long long k);

// Number of x outside S with x not in f(S) and f(x) outside S; equals
// unconnected_count(edge_multiset(f), k) (the two routes are checked
// against each other in the test suite, so this implementation stays
// independent of the edge-multiset path).
int mapping_unconnected_statistic(const Endofunction& f, int k);

struct TailBounds {
    double two_sided = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

// Chernoff-type tails for N around its mean at relative deviation s > 0:
//   two-sided  exp(-min(s,s^2) * rate / 3)   for P(|N-EN| > sEN+1)
//   lower      exp(-s^2 * rate / 2)          for P(N < (1-s)EN-1)
//   upper      exp(-s^2 * rate / (2+s))      for P(N > (1+s)EN+1)
// with rate = n(1-a)^2 e^(-a/(1-a)). The lower form is stated for
// 0 < s < 1; for s >= 1 its event is empty and the formula remains a
// valid (vacuous) bound, so all three accept any s > 0.
TailBounds unconnected_tail_bounds(long long n, long long k, double s);

// Classical Chernoff bounds for a binomial-type variable with the given
// mean: exponents min(s,s^2)/3, s^2/2, s^2/(2+s) times the mean.
TailBounds binomial_chernoff_bounds(double mean, double s);

// Martingale-route comparison value: 2 exp(-(n-1) t^2 (1-a)^4
// e^(-2a/(1-a)) / 2), the bound the edge-exposure martingale argument
// gives for the same statistic (asymptotic correction factor dropped).
double azuma_comparison_bound(long long n, long long k, double t);

// Tail factor exp(-(t^2/(2+t)) log(n) / 4) for P(C > (1+t) log n), C the
// number of cycles of a uniform mapping. Carries an asymptotic prefactor
// that is not computable at finite n; callers assert with a slack
// multiplier (default 1.1 in the experiment harness).
double cycle_tail_bound(long long n, double t);
// Same bound with n replaced by n-k, for mappings conditioned to send
// the k-prefix outside itself.
double cycle_tail_bound_restricted(long long n, long long k, double t);

// P(core size = k) for a uniform mapping on n points:
// k (n-1)! / (n^k (n-k)!). Exact rationals for n <= 170, log-space
// floating point for larger n.
Rational core_size_pmf_exact(int n, int k);
double core_size_pmf(long long n, long long k);

inline constexpr double kCycleBoundSlack = 1.1;

struct ExperimentRow {
    double s = 0.0;
    double emp_lower = 0.0;
    double emp_upper = 0.0;
    double emp_two_sided = 0.0;
    double bound_lower = 1.0;
    double bound_upper = 1.0;
    double bound_two_sided = 1.0;
    double azuma_bound = 1.0;
};

struct ExperimentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double reference_mean = 0.0; // closed-form mean where one exists, else 0
};

// Rows hold, per threshold, the empirical tail frequencies next to the
// closed-form bounds. Aggregation is by integer counts, so reports are
// byte-identical for any worker count. For the cycles kind only the
// upper-tail columns are meaningful; the remaining cells stay at their
// vacuous defaults (0 for frequencies, 1 for bounds).
struct ExperimentReport {
    std::string kind;  // "concentration" | "cycles" | "core_size"
    long long n = 0;
    long long k = 0; // 0 when unrestricted
    long long trials = 0;
    std::uint64_t seed = 0;
    int workers = 1; // informational; not serialized, reports are worker-independent
    double slack = kCycleBoundSlack;
    std::vector<ExperimentRow> rows;
    ExperimentSummary summary;
    std::vector<long long> histogram;   // statistic value -> count
    long long collapse_mismatches = 0;  // cycles kind with k > 0
};

// Samples independent trees, records N = unconnected_count(tree, k), and
// compares empirical tails against unconnected_tail_bounds and the
// martingale comparison value at every s in the grid.
ExperimentReport run_concentration_experiment(long long n, long long k, long long trials,
                                              const std::vector<double>& s_grid,
                                              std::uint64_t seed, int workers);

// Samples mappings (restricted when k is given), records the cycle count,
// and compares empirical P(C > (1+t) log m) with the closed-form tail,
// m = n or n-k. In the restricted case also checks per trial that
// collapsing the prefix preserves the cycle count.
ExperimentReport run_cycle_experiment(long long n, long long trials,
                                      const std::vector<double>& t_grid, std::uint64_t seed,
                                      int workers, std::optional<long long> restricted_k = {});

// Histogram of core sizes over sampled mappings; rows stay empty, the
// histogram pairs with core_size_pmf in the serializers.
ExperimentReport run_core_size_experiment(long long n, long long trials, std::uint64_t seed,
                                          int workers);

struct NaCovarianceReport {
    long long n = 0;
    long long k = 0;
    long long trials = 0;
    std::uint64_t seed = 0;
    double max_covariance = 0.0;
    double mc_threshold = 0.0; // 3 / sqrt(trials)
    bool vacuous = false;      // |S^c| < 2, nothing to correlate
};

// Estimates all pairwise covariances of the per-vertex indicators whose
// sum is the mapping statistic, over restricted mappings; negative
// association predicts every one of them to be <= 0 up to Monte Carlo
// error. Requires n - k <= 64 (dense pairwise accounting).
NaCovarianceReport na_covariance_check(long long n, long long k, long long trials,
                                       std::uint64_t seed, int workers);

} // namespace treebij

#endif // TREEBIJ_ANALYSIS_HPP
