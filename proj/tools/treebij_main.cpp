// Command-line frontend: sampling, conversions between mappings and
// doubly rooted trees, exhaustive verification, and Monte Carlo
// experiments with closed-form bound comparisons.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "treebij/analysis.hpp"
#include "treebij/bijection.hpp"
#include "treebij/io.hpp"
#include "treebij/oracle.hpp"
#include "treebij/rng.hpp"
#include "treebij/sampler.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct Options {
    long long n = 0;
    long long k = 0;
    long long count = 1;
    long long trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 0; // 0 -> hardware concurrency
    std::string s_grid = "0.05:1.0:0.05";
    std::string t_grid = "0.25:2.0:0.25";
    std::string variant = "renyi";
    long long root1 = 0;
    long long root2 = 0;
    std::string in_path;
    std::string out_path;
    std::string format;
};

int effective_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("--out: cannot open '" + out_path + "' for writing");
    out << content;
}

std::string read_input(const std::string& in_path) {
    if (in_path.empty()) {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw std::runtime_error("--in: cannot open '" + in_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

treebij::BijectionVariant parse_variant(const std::string& name) {
    if (name == "renyi") return treebij::BijectionVariant::renyi_joyal;
    if (name == "joyal") return treebij::BijectionVariant::joyal;
    throw std::invalid_argument("--variant: expected joyal or renyi, got '" + name + "'");
}

std::string pick_format(const std::string& format, const std::string& fallback,
                        std::initializer_list<const char*> allowed) {
    const std::string chosen = format.empty() ? fallback : format;
    for (const char* a : allowed)
        if (chosen == a) return chosen;
    throw std::invalid_argument("--format: '" + chosen + "' is not supported by this subcommand");
}

int run_sample(const std::string& what, const Options& opt) {
    const std::string format = pick_format(opt.format, "text", {"text", "json"});
    if (opt.n < 1) throw std::invalid_argument("--n: must be at least 1");
    if (opt.count < 1) throw std::invalid_argument("--count: must be at least 1");
    std::ostringstream out;
    for (long long i = 0; i < opt.count; ++i) {
        treebij::SeededRng rng(opt.seed, static_cast<std::uint64_t>(i));
        if (what == "mapping") {
            const auto f = treebij::sample_mapping(static_cast<int>(opt.n), rng);
            if (format == "text")
                out << treebij::format_mapping_line(f) << '\n';
            else
                out << nlohmann::json{{"n", f.n()}, {"image", f.to_one_based()}}.dump() << '\n';
        } else {
            const treebij::LabeledTree tree =
                what == "tree"
                    ? treebij::sample_tree(static_cast<int>(opt.n), rng)
                    : treebij::sample_independent_tree(static_cast<int>(opt.n),
                                                       static_cast<int>(opt.k), rng);
            if (format == "text")
                out << treebij::format_tree_text(tree);
            else
                out << treebij::tree_to_json(tree).dump() << '\n';
        }
    }
    write_output(opt.out_path, out.str());
    return kExitOk;
}

int run_convert_map_to_tree(const Options& opt) {
    pick_format(opt.format, "json", {"json"});
    const auto variant = parse_variant(opt.variant);
    const std::string input = read_input(opt.in_path);
    std::istringstream lines(input);
    std::ostringstream out;
    std::string line;
    bool any = false;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        any = true;
        const treebij::Endofunction f = treebij::parse_mapping_line(line);
        const auto [tree, report] = treebij::map_to_tree_with_report(f, variant);
        nlohmann::json j = treebij::doubly_rooted_tree_to_json(tree);
        j["report"] = treebij::delta_report_to_json(report);
        out << j.dump() << '\n';
    }
    if (!any) throw std::invalid_argument("convert map-to-tree: input holds no mapping lines");
    write_output(opt.out_path, out.str());
    return kExitOk;
}

int run_convert_tree_to_map(const Options& opt, bool roots_given) {
    pick_format(opt.format, "text", {"text"});
    const auto variant = parse_variant(opt.variant);
    const std::string input = read_input(opt.in_path);
    std::ostringstream out;

    auto invert = [&](const treebij::DoublyRootedTree& d) {
        return variant == treebij::BijectionVariant::renyi_joyal
                   ? treebij::renyi_joyal_inverse(d)
                   : treebij::joyal_inverse(d);
    };

    if (roots_given) {
        // Tree text format plus explicit roots.
        std::istringstream in(input);
        const treebij::LabeledTree tree = treebij::parse_tree_text(in);
        if (opt.root1 < 1 || opt.root1 > tree.n() || opt.root2 < 1 || opt.root2 > tree.n())
            throw std::invalid_argument("--root1/--root2: out of range 1..n");
        const treebij::DoublyRootedTree d(tree, static_cast<int>(opt.root1 - 1),
                                          static_cast<int>(opt.root2 - 1));
        out << treebij::format_mapping_line(invert(d)) << '\n';
    } else {
        // One doubly-rooted-tree JSON object per line.
        std::istringstream lines(input);
        std::string line;
        bool any = false;
        while (std::getline(lines, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            any = true;
            const nlohmann::json j = nlohmann::json::parse(line);
            out << treebij::format_mapping_line(invert(treebij::doubly_rooted_tree_from_json(j)))
                << '\n';
        }
        if (!any)
            throw std::invalid_argument(
                "convert tree-to-map: input holds no tree objects (pass --root1/--root2 for the "
                "tree text format)");
    }
    write_output(opt.out_path, out.str());
    return kExitOk;
}

int run_verify(const Options& opt) {
    pick_format(opt.format, "json", {"json"});
    if (opt.n < 1) throw std::invalid_argument("--n: must be at least 1");
    treebij::VerificationReport report;
    if (opt.k > 0) {
        if (opt.variant != "renyi")
            throw std::invalid_argument("verify exhaustive: restricted runs use --variant renyi");
        report = treebij::verify_restricted_exhaustive(static_cast<int>(opt.n),
                                                       static_cast<int>(opt.k));
    } else {
        report = treebij::verify_bijection_exhaustive(static_cast<int>(opt.n),
                                                      parse_variant(opt.variant));
    }
    write_output(opt.out_path, treebij::verification_report_to_json(report).dump(2) + "\n");
    return report.success() ? kExitOk : kExitVerificationFailure;
}

int run_experiment(const std::string& what, const Options& opt) {
    const std::string format = pick_format(opt.format, "csv", {"csv", "json"});
    const int workers = effective_workers(opt.workers);

    if (what == "na-check") {
        const auto report =
            treebij::na_covariance_check(opt.n, opt.k, opt.trials, opt.seed, workers);
        write_output(opt.out_path, format == "csv"
                                       ? treebij::na_report_to_csv(report)
                                       : treebij::na_report_to_json(report).dump(2) + "\n");
        return kExitOk;
    }

    treebij::ExperimentReport report;
    if (what == "concentration") {
        report = treebij::run_concentration_experiment(
            opt.n, opt.k, opt.trials, treebij::parse_grid(opt.s_grid), opt.seed, workers);
    } else if (what == "cycles") {
        std::optional<long long> restricted;
        if (opt.k > 0) restricted = opt.k;
        report = treebij::run_cycle_experiment(opt.n, opt.trials, treebij::parse_grid(opt.t_grid),
                                               opt.seed, workers, restricted);
    } else { // core-size
        report = treebij::run_core_size_experiment(opt.n, opt.trials, opt.seed, workers);
    }
    write_output(opt.out_path, format == "csv"
                                   ? treebij::experiment_report_to_csv(report)
                                   : treebij::experiment_report_to_json(report).dump(2) + "\n");
    // The restricted cycle run doubles as a per-trial identity check.
    if (report.collapse_mismatches > 0) return kExitVerificationFailure;
    return kExitOk;
}

int run_stats_bounds(const Options& opt) {
    const std::string format = pick_format(opt.format, "text", {"text", "json", "csv"});
    if (opt.n < 2) throw std::invalid_argument("--n: must be at least 2");
    const bool with_k = opt.k > 0;
    const auto s_values = treebij::parse_grid(opt.s_grid);
    const auto t_values = treebij::parse_grid(opt.t_grid);

    nlohmann::json j{{"n", opt.n}, {"k", opt.k}};
    if (with_k) {
        const auto params = treebij::concentration_parameters(opt.n, opt.k);
        j["alpha"] = params.alpha;
        j["expected_exact"] = params.expected_exact;
        j["expected_asymptotic"] = params.expected_asymptotic;
        j["rate"] = params.rate;
        nlohmann::json rows = nlohmann::json::array();
        for (double s : s_values) {
            const auto b = treebij::unconnected_tail_bounds(opt.n, opt.k, s);
            const auto chernoff = treebij::binomial_chernoff_bounds(params.expected_exact, s);
            rows.push_back({{"s", s},
                            {"bound_lower", b.lower},
                            {"bound_upper", b.upper},
                            {"bound_two_sided", b.two_sided},
                            {"azuma_bound", treebij::azuma_comparison_bound(opt.n, opt.k, s)},
                            {"chernoff_lower", chernoff.lower},
                            {"chernoff_upper", chernoff.upper},
                            {"chernoff_two_sided", chernoff.two_sided}});
        }
        j["tail_bounds"] = std::move(rows);
    }
    nlohmann::json cycle_rows = nlohmann::json::array();
    for (double t : t_values) {
        nlohmann::json row{{"t", t}, {"cycle_tail", treebij::cycle_tail_bound(opt.n, t)}};
        if (with_k)
            row["cycle_tail_restricted"] =
                treebij::cycle_tail_bound_restricted(opt.n, opt.k, t);
        cycle_rows.push_back(std::move(row));
    }
    j["cycle_tail_bounds"] = std::move(cycle_rows);

    std::ostringstream out;
    if (format == "json") {
        out << j.dump(2) << '\n';
    } else if (format == "csv") {
        out << "kind,n,k,value,bound_lower,bound_upper,bound_two_sided,azuma_bound\n";
        char buf[256];
        if (with_k) {
            for (const auto& row : j["tail_bounds"]) {
                std::snprintf(buf, sizeof(buf), "tail,%lld,%lld,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                              opt.n, opt.k, row["s"].get<double>(),
                              row["bound_lower"].get<double>(), row["bound_upper"].get<double>(),
                              row["bound_two_sided"].get<double>(),
                              row["azuma_bound"].get<double>());
                out << buf;
                std::snprintf(buf, sizeof(buf), "chernoff,%lld,%lld,%.12g,%.12g,%.12g,%.12g,1\n",
                              opt.n, opt.k, row["s"].get<double>(),
                              row["chernoff_lower"].get<double>(),
                              row["chernoff_upper"].get<double>(),
                              row["chernoff_two_sided"].get<double>());
                out << buf;
            }
        }
        for (const auto& row : j["cycle_tail_bounds"]) {
            const double bound = row["cycle_tail"].get<double>();
            std::snprintf(buf, sizeof(buf), "cycle,%lld,0,%.12g,1,%.12g,1,1\n", opt.n,
                          row["t"].get<double>(), bound);
            out << buf;
            if (with_k) {
                std::snprintf(buf, sizeof(buf), "cycle_restricted,%lld,%lld,%.12g,1,%.12g,1,1\n",
                              opt.n, opt.k, row["t"].get<double>(),
                              row["cycle_tail_restricted"].get<double>());
                out << buf;
            }
        }
    } else {
        out << "n=" << opt.n;
        if (with_k) out << " k=" << opt.k << " alpha=" << j["alpha"].get<double>();
        out << '\n';
        if (with_k) {
            out << "expected unconnected: exact=" << j["expected_exact"].get<double>()
                << " asymptotic=" << j["expected_asymptotic"].get<double>() << '\n';
            out << "s  lower  upper  two_sided  azuma  chernoff_lower  chernoff_upper  "
                   "chernoff_two_sided\n";
            for (const auto& row : j["tail_bounds"]) {
                out << row["s"].get<double>() << "  " << row["bound_lower"].get<double>() << "  "
                    << row["bound_upper"].get<double>() << "  "
                    << row["bound_two_sided"].get<double>() << "  "
                    << row["azuma_bound"].get<double>() << "  "
                    << row["chernoff_lower"].get<double>() << "  "
                    << row["chernoff_upper"].get<double>() << "  "
                    << row["chernoff_two_sided"].get<double>() << '\n';
            }
        }
        out << "t  cycle_tail" << (with_k ? "  cycle_tail_restricted" : "") << '\n';
        for (const auto& row : j["cycle_tail_bounds"]) {
            out << row["t"].get<double>() << "  " << row["cycle_tail"].get<double>();
            if (with_k) out << "  " << row["cycle_tail_restricted"].get<double>();
            out << '\n';
        }
    }
    write_output(opt.out_path, out.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Endofunction/tree bijections: uniform tree sampling, conversions, "
                 "exhaustive verification, and concentration experiments"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "64-bit master seed (default 1729)");
        cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
        cmd->add_option("--format", opt.format, "output format: text|json|csv");
    };

    auto* sample = app.add_subcommand("sample", "draw seeded random objects");
    sample->require_subcommand(1);
    auto* sample_tree_cmd = sample->add_subcommand("tree", "uniform labelled tree");
    auto* sample_mapping_cmd = sample->add_subcommand("mapping", "uniform endofunction");
    auto* sample_itree_cmd = sample->add_subcommand(
        "independent-tree", "uniform tree with the prefix {1..k} independent");
    for (CLI::App* cmd : {sample_tree_cmd, sample_mapping_cmd, sample_itree_cmd}) {
        cmd->add_option("--n", opt.n, "number of vertices")->required();
        cmd->add_option("--count", opt.count, "number of samples (streams 0..count-1)");
        add_common(cmd);
    }
    sample_itree_cmd->add_option("--k", opt.k, "size of the independent prefix")->required();

    auto* convert = app.add_subcommand("convert", "apply a bijection or its inverse");
    convert->require_subcommand(1);
    auto* map_to_tree_cmd =
        convert->add_subcommand("map-to-tree", "mapping lines -> doubly rooted tree JSON");
    auto* tree_to_map_cmd =
        convert->add_subcommand("tree-to-map", "doubly rooted tree -> mapping line");
    for (CLI::App* cmd : {map_to_tree_cmd, tree_to_map_cmd}) {
        cmd->add_option("--variant", opt.variant, "bijection variant: joyal|renyi");
        cmd->add_option("--in", opt.in_path, "input file (default: stdin)");
        cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
        cmd->add_option("--format", opt.format, "output format");
    }
    auto* root1_opt = tree_to_map_cmd->add_option(
        "--root1", opt.root1, "first root (tree text input, 1-based)");
    auto* root2_opt = tree_to_map_cmd->add_option(
        "--root2", opt.root2, "second root (tree text input, 1-based)");

    auto* verify = app.add_subcommand("verify", "exhaustive small-n checks");
    auto* verify_exhaustive_cmd =
        verify->add_subcommand("exhaustive", "enumerate all maps and verify the bijection");
    verify_exhaustive_cmd->add_option("--n", opt.n, "domain size (<= 7)")->required();
    verify_exhaustive_cmd->add_option("--k", opt.k, "restricted prefix size (omit for all maps)");
    verify_exhaustive_cmd->add_option("--variant", opt.variant, "bijection variant: joyal|renyi");
    add_common(verify_exhaustive_cmd);

    auto* experiment = app.add_subcommand("experiment", "seeded Monte Carlo reports");
    experiment->require_subcommand(1);
    auto* exp_conc = experiment->add_subcommand(
        "concentration", "tail frequencies of the unconnected count vs closed-form bounds");
    auto* exp_cycles =
        experiment->add_subcommand("cycles", "cycle-count tails vs the log-n bound");
    auto* exp_core = experiment->add_subcommand("core-size", "core-size histogram vs exact pmf");
    auto* exp_na = experiment->add_subcommand("na-check", "max pairwise indicator covariance");
    for (CLI::App* cmd : {exp_conc, exp_cycles, exp_core, exp_na}) {
        cmd->add_option("--n", opt.n, "number of vertices")->required();
        cmd->add_option("--trials", opt.trials, "Monte Carlo trials (default 10000)");
        cmd->add_option("--workers", opt.workers, "worker threads (default: hardware)");
        add_common(cmd);
    }
    exp_conc->add_option("--k", opt.k, "independent prefix size")->required();
    exp_conc->add_option("--s-grid", opt.s_grid, "thresholds a:b:step (default 0.05:1.0:0.05)");
    exp_cycles->add_option("--k", opt.k, "restrict maps to send {1..k} outside itself");
    exp_cycles->add_option("--t-grid", opt.t_grid, "thresholds a:b:step (default 0.25:2.0:0.25)");
    exp_na->add_option("--k", opt.k, "independent prefix size")->required();

    auto* stats = app.add_subcommand("stats", "closed-form values without simulation");
    auto* stats_bounds_cmd = stats->add_subcommand("bounds", "print bound values on a grid");
    stats_bounds_cmd->add_option("--n", opt.n, "number of vertices")->required();
    stats_bounds_cmd->add_option("--k", opt.k, "independent prefix size (optional)");
    stats_bounds_cmd->add_option("--s-grid", opt.s_grid, "deviation grid a:b:step");
    stats_bounds_cmd->add_option("--t-grid", opt.t_grid, "cycle threshold grid a:b:step");
    add_common(stats_bounds_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*sample_tree_cmd) return run_sample("tree", opt);
        if (*sample_mapping_cmd) return run_sample("mapping", opt);
        if (*sample_itree_cmd) return run_sample("independent-tree", opt);
        if (*map_to_tree_cmd) return run_convert_map_to_tree(opt);
        if (*tree_to_map_cmd) {
            const bool roots_given = root1_opt->count() > 0 || root2_opt->count() > 0;
            if (roots_given && (root1_opt->count() == 0 || root2_opt->count() == 0))
                throw std::invalid_argument("--root1 and --root2 must be given together");
            return run_convert_tree_to_map(opt, roots_given);
        }
        if (*verify_exhaustive_cmd) return run_verify(opt);
        if (*exp_conc) return run_experiment("concentration", opt);
        if (*exp_cycles) return run_experiment("cycles", opt);
        if (*exp_core) return run_experiment("core-size", opt);
        if (*exp_na) return run_experiment("na-check", opt);
        if (*stats_bounds_cmd) return run_stats_bounds(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::logic_error& e) {
        // Bare logic_error marks a violated internal guarantee.
        std::cerr << "assertion failed: " << e.what() << '\n';
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
