#include "treebij/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "treebij/bijection.hpp"
#include "treebij/rng.hpp"
#include "treebij/sampler.hpp"

namespace treebij {

namespace {

void check_nk(long long n, long long k, const char* what) {
    if (n < 2 || k < 1 || k >= n)
        throw std::invalid_argument(std::string(what) + ": need 1 <= k < n");
}

double concentration_rate(long long n, long long k) {
    const double alpha = static_cast<double>(k) / static_cast<double>(n);
    return static_cast<double>(n) * (1.0 - alpha) * (1.0 - alpha)
           * std::exp(-alpha / (1.0 - alpha));
}

} // namespace

ConcentrationBounds concentration_parameters(long long n, long long k) {
    check_nk(n, k, "concentration_parameters");
    ConcentrationBounds out;
    out.n = n;
    out.k = k;
    out.alpha = static_cast<double>(k) / static_cast<double>(n);
    const ExpectedUnconnected e = expected_unconnected(n, k);
    out.expected_exact = e.exact;
    out.expected_asymptotic = e.asymptotic;
    out.rate = e.asymptotic;
    return out;
}

ExpectedUnconnected expected_unconnected(long long n, long long k) {
    check_nk(n, k, "expected_unconnected");
    ExpectedUnconnected out;
    const double nk = static_cast<double>(n - k);
    out.exact = nk * std::exp(static_cast<double>(k) * std::log1p(-1.0 / nk))
                * (1.0 - static_cast<double>(k) / static_cast<double>(n));
    out.asymptotic = concentration_rate(n, k);
    return out;
}

Rational expected_unconnected_exact_rational(long long n, long long k) {
    check_nk(n, k, "expected_unconnected_exact_rational");
    // (n-k)(1 - 1/(n-k))^k (1 - k/n) = (n-k)^2 (n-k-1)^k / ((n-k)^k n)
    const BigInt nk = n - k;
    BigInt num = nk * nk * boost::multiprecision::pow(BigInt(n - k - 1), static_cast<unsigned>(k));
    BigInt den = boost::multiprecision::pow(nk, static_cast<unsigned>(k)) * n;
    return Rational(num, den);
}

int mapping_unconnected_statistic(const Endofunction& f, int k) {
    const int n = f.n();
    if (k < 1 || k >= n)
        throw std::invalid_argument("mapping_unconnected_statistic: need 1 <= k < n");
    std::vector<char> in_prefix_image(static_cast<size_t>(n), 0);
    for (Vertex s = 0; s < k; ++s) {
        if (f(s) < k)
            throw std::invalid_argument(
                "mapping_unconnected_statistic: map sends the prefix into itself");
        in_prefix_image[static_cast<size_t>(f(s))] = 1;
    }
    int count = 0;
    for (Vertex x = k; x < n; ++x)
        count += (!in_prefix_image[static_cast<size_t>(x)] && f(x) >= k);
    return count;
}

TailBounds unconnected_tail_bounds(long long n, long long k, double s) {
    check_nk(n, k, "unconnected_tail_bounds");
    if (s <= 0.0) throw std::domain_error("unconnected_tail_bounds: need s > 0");
    const double rate = concentration_rate(n, k);
    TailBounds out;
    out.two_sided = std::exp(-std::min(s, s * s) * rate / 3.0);
    out.lower = std::exp(-s * s * rate / 2.0);
    out.upper = std::exp(-s * s * rate / (2.0 + s));
    return out;
}

TailBounds binomial_chernoff_bounds(double mean, double s) {
    if (mean <= 0.0) throw std::domain_error("binomial_chernoff_bounds: need mean > 0");
    if (s <= 0.0) throw std::domain_error("binomial_chernoff_bounds: need s > 0");
    TailBounds out;
    out.two_sided = std::exp(-std::min(s, s * s) * mean / 3.0);
    out.lower = std::exp(-s * s * mean / 2.0);
    out.upper = std::exp(-s * s * mean / (2.0 + s));
    return out;
}

double azuma_comparison_bound(long long n, long long k, double t) {
    check_nk(n, k, "azuma_comparison_bound");
    if (t <= 0.0) throw std::domain_error("azuma_comparison_bound: need t > 0");
    const double alpha = static_cast<double>(k) / static_cast<double>(n);
    const double oma = 1.0 - alpha;
    const double factor = oma * oma * oma * oma * std::exp(-2.0 * alpha / oma);
    return 2.0 * std::exp(-static_cast<double>(n - 1) * t * t * factor / 2.0);
}

double cycle_tail_bound(long long n, double t) {
    if (n < 2) throw std::domain_error("cycle_tail_bound: need n >= 2");
    if (t <= 0.0) throw std::domain_error("cycle_tail_bound: need t > 0");
    return std::exp(-(t * t / (2.0 + t)) * std::log(static_cast<double>(n)) / 4.0);
}

double cycle_tail_bound_restricted(long long n, long long k, double t) {
    check_nk(n, k, "cycle_tail_bound_restricted");
    return cycle_tail_bound(n - k, t);
}

Rational core_size_pmf_exact(int n, int k) {
    if (n < 1 || n > 170)
        throw std::invalid_argument("core_size_pmf_exact: exact mode covers 1 <= n <= 170");
    if (k < 1 || k > n) throw std::invalid_argument("core_size_pmf_exact: k out of range");
    auto factorial = [](int m) {
        BigInt r = 1;
        for (int i = 2; i <= m; ++i) r *= i;
        return r;
    };
    BigInt num = BigInt(k) * factorial(n - 1);
    BigInt den = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k)) * factorial(n - k);
    return Rational(num, den);
}

double core_size_pmf(long long n, long long k) {
    if (n < 1) throw std::invalid_argument("core_size_pmf: need n >= 1");
    if (k < 1 || k > n) throw std::invalid_argument("core_size_pmf: k out of range");
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    const double log_p = std::log(dk) + std::lgamma(dn) - dk * std::log(dn)
                         - std::lgamma(dn - dk + 1.0);
    return std::exp(log_p);
}

namespace {

struct TrialRange {
    long long begin = 0;
    long long end = 0;
};

std::vector<TrialRange> partition_trials(long long trials, int workers) {
    const long long w = std::max<long long>(1, std::min<long long>(workers, trials));
    std::vector<TrialRange> ranges;
    ranges.reserve(static_cast<size_t>(w));
    for (long long i = 0; i < w; ++i)
        ranges.push_back({trials * i / w, trials * (i + 1) / w});
    return ranges;
}

// Runs body(trial, local) over [0, trials) split across workers; locals
// are merged in partition order. Merging must be commutative over integer
// accumulators so the result is independent of the split.
template <typename Local, typename Body, typename Merge>
void run_partitioned(long long trials, int workers, Body&& body, Merge&& merge) {
    const auto ranges = partition_trials(trials, workers);
    std::vector<Local> locals(ranges.size());
    if (ranges.size() == 1) {
        for (long long t = ranges[0].begin; t < ranges[0].end; ++t) body(t, locals[0]);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(ranges.size());
        threads.reserve(ranges.size());
        for (size_t i = 0; i < ranges.size(); ++i) {
            threads.emplace_back([&, i] {
                try {
                    for (long long t = ranges[i].begin; t < ranges[i].end; ++t)
                        body(t, locals[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto& th : threads) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    for (Local& local : locals) merge(local);
}

ExperimentSummary summarize_histogram(const std::vector<long long>& histogram, long long trials,
                                      double reference_mean) {
    ExperimentSummary out;
    out.reference_mean = reference_mean;
    if (trials <= 0) return out;
    BigInt sum = 0, sum_sq = 0;
    for (size_t v = 0; v < histogram.size(); ++v) {
        const BigInt value = static_cast<long long>(v);
        sum += value * histogram[v];
        sum_sq += value * value * histogram[v];
    }
    out.mean = Rational(sum, trials).convert_to<double>();
    if (trials >= 2) {
        const BigInt num = BigInt(trials) * sum_sq - sum * sum;
        const BigInt den = BigInt(trials) * (trials - 1);
        out.variance = Rational(num, den).convert_to<double>();
    }
    return out;
}

std::vector<double> sorted_grid(std::vector<double> grid, const char* what) {
    if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty threshold grid");
    std::sort(grid.begin(), grid.end());
    for (double v : grid)
        if (v <= 0.0) throw std::invalid_argument(std::string(what) + ": thresholds must be > 0");
    return grid;
}

} // namespace

ExperimentReport run_concentration_experiment(long long n, long long k, long long trials,
                                              const std::vector<double>& s_grid,
                                              std::uint64_t seed, int workers) {
    check_nk(n, k, "run_concentration_experiment");
    if (trials < 1) throw std::invalid_argument("run_concentration_experiment: need trials >= 1");
    const std::vector<double> grid = sorted_grid(s_grid, "run_concentration_experiment");

    struct Local {
        std::vector<long long> histogram;
    };
    std::vector<long long> histogram(static_cast<size_t>(n - k + 1), 0);
    run_partitioned<Local>(
        trials, workers,
        [&](long long trial, Local& local) {
            if (local.histogram.empty())
                local.histogram.assign(static_cast<size_t>(n - k + 1), 0);
            SeededRng rng(seed, static_cast<std::uint64_t>(trial));
            const LabeledTree tree =
                sample_independent_tree(static_cast<int>(n), static_cast<int>(k), rng);
            ++local.histogram[static_cast<size_t>(unconnected_count(tree, static_cast<int>(k)))];
        },
        [&](Local& local) {
            for (size_t i = 0; i < local.histogram.size(); ++i) histogram[i] += local.histogram[i];
        });

    const double expected = expected_unconnected(n, k).exact;
    ExperimentReport report;
    report.kind = "concentration";
    report.n = n;
    report.k = k;
    report.trials = trials;
    report.seed = seed;
    report.workers = workers;
    report.histogram = histogram;
    report.summary = summarize_histogram(histogram, trials, expected);

    for (double s : grid) {
        ExperimentRow row;
        row.s = s;
        long long below = 0, above = 0, outside = 0;
        for (size_t v = 0; v < histogram.size(); ++v) {
            if (histogram[v] == 0) continue;
            const double value = static_cast<double>(v);
            if (value < (1.0 - s) * expected - 1.0) below += histogram[v];
            if (value > (1.0 + s) * expected + 1.0) above += histogram[v];
            if (std::abs(value - expected) > s * expected + 1.0) outside += histogram[v];
        }
        row.emp_lower = static_cast<double>(below) / static_cast<double>(trials);
        row.emp_upper = static_cast<double>(above) / static_cast<double>(trials);
        row.emp_two_sided = static_cast<double>(outside) / static_cast<double>(trials);
        const TailBounds bounds = unconnected_tail_bounds(n, k, s);
        row.bound_lower = bounds.lower;
        row.bound_upper = bounds.upper;
        row.bound_two_sided = bounds.two_sided;
        row.azuma_bound = azuma_comparison_bound(n, k, s);
        report.rows.push_back(row);
    }
    return report;
}

ExperimentReport run_cycle_experiment(long long n, long long trials,
                                      const std::vector<double>& t_grid, std::uint64_t seed,
                                      int workers, std::optional<long long> restricted_k) {
    if (n < 2) throw std::invalid_argument("run_cycle_experiment: need n >= 2");
    if (trials < 1) throw std::invalid_argument("run_cycle_experiment: need trials >= 1");
    if (restricted_k) check_nk(n, *restricted_k, "run_cycle_experiment");
    const std::vector<double> grid = sorted_grid(t_grid, "run_cycle_experiment");
    const long long k = restricted_k.value_or(0);

    struct Local {
        std::vector<long long> histogram;
        long long mismatches = 0;
    };
    std::vector<long long> histogram(static_cast<size_t>(n + 1), 0);
    long long mismatches = 0;
    run_partitioned<Local>(
        trials, workers,
        [&](long long trial, Local& local) {
            if (local.histogram.empty()) local.histogram.assign(static_cast<size_t>(n + 1), 0);
            SeededRng rng(seed, static_cast<std::uint64_t>(trial));
            if (k > 0) {
                const Endofunction g =
                    sample_restricted_mapping(static_cast<int>(n), static_cast<int>(k), rng);
                const int cycles = cycle_count(g);
                const int collapsed_cycles =
                    cycle_count(collapse_to_complement(g, static_cast<int>(k)));
                local.mismatches += (cycles != collapsed_cycles);
                ++local.histogram[static_cast<size_t>(cycles)];
            } else {
                const Endofunction f = sample_mapping(static_cast<int>(n), rng);
                ++local.histogram[static_cast<size_t>(cycle_count(f))];
            }
        },
        [&](Local& local) {
            for (size_t i = 0; i < local.histogram.size(); ++i) histogram[i] += local.histogram[i];
            mismatches += local.mismatches;
        });

    ExperimentReport report;
    report.kind = "cycles";
    report.n = n;
    report.k = k;
    report.trials = trials;
    report.seed = seed;
    report.workers = workers;
    report.histogram = histogram;
    report.collapse_mismatches = mismatches;
    report.summary = summarize_histogram(histogram, trials, 0.0);

    const long long effective_n = k > 0 ? n - k : n;
    const double log_n = std::log(static_cast<double>(effective_n));
    for (double t : grid) {
        ExperimentRow row;
        row.s = t;
        long long above = 0;
        for (size_t v = 0; v < histogram.size(); ++v)
            if (static_cast<double>(v) > (1.0 + t) * log_n) above += histogram[v];
        row.emp_upper = static_cast<double>(above) / static_cast<double>(trials);
        row.bound_upper = cycle_tail_bound(effective_n, t);
        report.rows.push_back(row);
    }
    return report;
}

ExperimentReport run_core_size_experiment(long long n, long long trials, std::uint64_t seed,
                                          int workers) {
    if (n < 1) throw std::invalid_argument("run_core_size_experiment: need n >= 1");
    if (trials < 1) throw std::invalid_argument("run_core_size_experiment: need trials >= 1");

    struct Local {
        std::vector<long long> histogram;
    };
    std::vector<long long> histogram(static_cast<size_t>(n + 1), 0);
    run_partitioned<Local>(
        trials, workers,
        [&](long long trial, Local& local) {
            if (local.histogram.empty()) local.histogram.assign(static_cast<size_t>(n + 1), 0);
            SeededRng rng(seed, static_cast<std::uint64_t>(trial));
            const Endofunction f = sample_mapping(static_cast<int>(n), rng);
            ++local.histogram[static_cast<size_t>(core_decompose(f).core_size())];
        },
        [&](Local& local) {
            for (size_t i = 0; i < local.histogram.size(); ++i) histogram[i] += local.histogram[i];
        });

    ExperimentReport report;
    report.kind = "core_size";
    report.n = n;
    report.k = 0;
    report.trials = trials;
    report.seed = seed;
    report.workers = workers;
    report.histogram = histogram;
    report.summary = summarize_histogram(histogram, trials, 0.0);
    return report;
}

NaCovarianceReport na_covariance_check(long long n, long long k, long long trials,
                                       std::uint64_t seed, int workers) {
    check_nk(n, k, "na_covariance_check");
    if (trials < 1) throw std::invalid_argument("na_covariance_check: need trials >= 1");
    const long long m = n - k;
    if (m > 64)
        throw std::invalid_argument("na_covariance_check: pairwise accounting needs n - k <= 64");

    NaCovarianceReport report;
    report.n = n;
    report.k = k;
    report.trials = trials;
    report.seed = seed;
    report.mc_threshold = 3.0 / std::sqrt(static_cast<double>(trials));
    if (m < 2) {
        report.vacuous = true;
        return report;
    }

    struct Local {
        std::vector<long long> singles;
        std::vector<long long> pairs; // row-major over (i, j), i < j used
    };
    std::vector<long long> singles(static_cast<size_t>(m), 0);
    std::vector<long long> pairs(static_cast<size_t>(m * m), 0);
    run_partitioned<Local>(
        trials, workers,
        [&](long long trial, Local& local) {
            if (local.singles.empty()) {
                local.singles.assign(static_cast<size_t>(m), 0);
                local.pairs.assign(static_cast<size_t>(m * m), 0);
            }
            SeededRng rng(seed, static_cast<std::uint64_t>(trial));
            const Endofunction f =
                sample_restricted_mapping(static_cast<int>(n), static_cast<int>(k), rng);
            std::vector<char> hit(static_cast<size_t>(n), 0);
            for (Vertex s = 0; s < static_cast<int>(k); ++s) hit[static_cast<size_t>(f(s))] = 1;
            std::vector<char> indicator(static_cast<size_t>(m), 0);
            for (long long i = 0; i < m; ++i) {
                const Vertex x = static_cast<Vertex>(k + i);
                indicator[static_cast<size_t>(i)] =
                    (!hit[static_cast<size_t>(x)] && f(x) >= static_cast<int>(k));
            }
            for (long long i = 0; i < m; ++i) {
                if (!indicator[static_cast<size_t>(i)]) continue;
                ++local.singles[static_cast<size_t>(i)];
                for (long long j = i + 1; j < m; ++j)
                    local.pairs[static_cast<size_t>(i * m + j)] += indicator[static_cast<size_t>(j)];
            }
        },
        [&](Local& local) {
            for (size_t i = 0; i < local.singles.size(); ++i) singles[i] += local.singles[i];
            for (size_t i = 0; i < local.pairs.size(); ++i) pairs[i] += local.pairs[i];
        });

    double max_cov = -1.0;
    const double dt = static_cast<double>(trials);
    for (long long i = 0; i < m; ++i) {
        for (long long j = i + 1; j < m; ++j) {
            const double mean_ij = static_cast<double>(pairs[static_cast<size_t>(i * m + j)]) / dt;
            const double mean_i = static_cast<double>(singles[static_cast<size_t>(i)]) / dt;
            const double mean_j = static_cast<double>(singles[static_cast<size_t>(j)]) / dt;
            max_cov = std::max(max_cov, mean_ij - mean_i * mean_j);
        }
    }
    report.max_covariance = max_cov;
    return report;
}

} // namespace treebij
