#include "treebij/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace treebij {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int parse_int(const std::string& token, const char* what) {
    size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": not an integer: '" + token + "'");
    }
    if (pos != token.size())
        throw std::invalid_argument(std::string(what) + ": trailing characters in '" + token + "'");
    return value;
}

} // namespace

Endofunction parse_mapping_line(const std::string& line) {
    std::istringstream in(line);
    std::vector<int> image;
    std::string token;
    while (in >> token) image.push_back(parse_int(token, "mapping"));
    if (image.empty()) throw std::invalid_argument("mapping: empty line");
    const int n = static_cast<int>(image.size());
    for (int y : image)
        if (y < 1 || y > n)
            throw std::invalid_argument("mapping: entry out of range 1..n");
    return Endofunction::from_one_based(image);
}

std::string format_mapping_line(const Endofunction& f) {
    std::ostringstream out;
    const auto img = f.to_one_based();
    for (size_t i = 0; i < img.size(); ++i) {
        if (i) out << ' ';
        out << img[i];
    }
    return out.str();
}

LabeledTree parse_tree_text(std::istream& in) {
    long long n = 0;
    if (!(in >> n)) throw std::invalid_argument("tree: missing vertex count");
    if (n < 1) throw std::invalid_argument("tree: vertex count must be positive");
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(n - 1));
    for (long long i = 0; i < n - 1; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v)) throw std::invalid_argument("tree: missing edge line");
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("tree: edge endpoint out of range 1..n");
        edges.push_back(make_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)));
    }
    return LabeledTree(static_cast<int>(n), std::move(edges));
}

std::string format_tree_text(const LabeledTree& t) {
    std::ostringstream out;
    out << t.n() << '\n';
    for (const Edge& e : t.edges()) out << e.first + 1 << ' ' << e.second + 1 << '\n';
    return out.str();
}

nlohmann::json doubly_rooted_tree_to_json(const DoublyRootedTree& d) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : d.tree.edges()) edges.push_back({e.first + 1, e.second + 1});
    return {{"n", d.tree.n()},
            {"root1", d.root1 + 1},
            {"root2", d.root2 + 1},
            {"edges", std::move(edges)}};
}

DoublyRootedTree doubly_rooted_tree_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("doubly rooted tree: expected a JSON object");
    for (const char* key : {"n", "root1", "root2", "edges"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("doubly rooted tree: missing key '") + key + "'");
    const int n = j.at("n").get<int>();
    const int root1 = j.at("root1").get<int>();
    const int root2 = j.at("root2").get<int>();
    if (n < 1) throw std::invalid_argument("doubly rooted tree: n must be positive");
    if (root1 < 1 || root1 > n || root2 < 1 || root2 > n)
        throw std::invalid_argument("doubly rooted tree: root out of range 1..n");
    std::vector<Edge> edges;
    for (const auto& pair : j.at("edges")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("doubly rooted tree: edges must be [u,v] pairs");
        const int u = pair[0].get<int>();
        const int v = pair[1].get<int>();
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("doubly rooted tree: edge endpoint out of range 1..n");
        edges.push_back(make_edge(u - 1, v - 1));
    }
    return DoublyRootedTree(LabeledTree(n, std::move(edges)), root1 - 1, root2 - 1);
}

nlohmann::json tree_to_json(const LabeledTree& t) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : t.edges()) edges.push_back({e.first + 1, e.second + 1});
    return {{"n", t.n()}, {"edges", std::move(edges)}};
}

nlohmann::json delta_report_to_json(const DeltaReport& r) {
    return {{"delta", r.delta},
            {"cycle_count", r.cycle_count},
            {"bound", r.bound},
            {"core_size", r.core_size}};
}

nlohmann::json verification_report_to_json(const VerificationReport& r) {
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [offset, count] : r.delta_offset_histogram)
        histogram[std::to_string(offset)] = count;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& failure : r.failures)
        failures.push_back({{"input", failure.input}, {"property", failure.property}});
    nlohmann::json out{{"n", r.n},
                       {"variant", r.variant},
                       {"maps_enumerated", r.maps_enumerated},
                       {"distinct_images", r.distinct_images},
                       {"distinct_trees", r.distinct_trees},
                       {"expected_images", r.expected_images},
                       {"expected_trees", r.expected_trees},
                       {"delta_offset_histogram", std::move(histogram)},
                       {"failure_count", r.failure_count},
                       {"failures", std::move(failures)},
                       {"success", r.success()}};
    if (r.k > 0) {
        out["k"] = r.k;
        out["rooting_multiplicity"] = r.rooting_multiplicity;
    }
    return out;
}

nlohmann::json experiment_report_to_json(const ExperimentReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ExperimentRow& row : r.rows)
        rows.push_back({{"s", row.s},
                        {"emp_lower", row.emp_lower},
                        {"emp_upper", row.emp_upper},
                        {"emp_two_sided", row.emp_two_sided},
                        {"bound_lower", row.bound_lower},
                        {"bound_upper", row.bound_upper},
                        {"bound_two_sided", row.bound_two_sided},
                        {"azuma_bound", row.azuma_bound}});
    nlohmann::json histogram = nlohmann::json::object();
    for (size_t v = 0; v < r.histogram.size(); ++v)
        if (r.histogram[v] != 0) histogram[std::to_string(v)] = r.histogram[v];
    nlohmann::json out{{"kind", r.kind},
                       {"n", r.n},
                       {"k", r.k},
                       {"trials", r.trials},
                       {"seed", r.seed},
                       {"rows", std::move(rows)},
                       {"mean", r.summary.mean},
                       {"variance", r.summary.variance},
                       {"histogram", std::move(histogram)}};
    if (r.kind == "concentration") out["reference_mean"] = r.summary.reference_mean;
    if (r.kind == "cycles") {
        out["slack"] = r.slack;
        if (r.k > 0) out["collapse_mismatches"] = r.collapse_mismatches;
    }
    return out;
}

std::string experiment_report_to_csv(const ExperimentReport& r) {
    std::ostringstream out;
    if (r.kind == "core_size") {
        out << "n,trials,seed,core_size,empirical,exact_pmf\n";
        for (size_t v = 0; v < r.histogram.size(); ++v) {
            if (r.histogram[v] == 0) continue;
            const double emp = static_cast<double>(r.histogram[v]) / static_cast<double>(r.trials);
            out << r.n << ',' << r.trials << ',' << r.seed << ',' << v << ','
                << fmt_double(emp) << ',' << fmt_double(core_size_pmf(r.n, static_cast<long long>(v)))
                << '\n';
        }
        return out.str();
    }
    out << "n,k,trials,seed,s,emp_lower,emp_upper,emp_two_sided,"
           "bound_lower,bound_upper,bound_two_sided,azuma_bound\n";
    for (const ExperimentRow& row : r.rows) {
        out << r.n << ',' << r.k << ',' << r.trials << ',' << r.seed << ',' << fmt_double(row.s)
            << ',' << fmt_double(row.emp_lower) << ',' << fmt_double(row.emp_upper) << ','
            << fmt_double(row.emp_two_sided) << ',' << fmt_double(row.bound_lower) << ','
            << fmt_double(row.bound_upper) << ',' << fmt_double(row.bound_two_sided) << ','
            << fmt_double(row.azuma_bound) << '\n';
    }
    return out.str();
}

nlohmann::json na_report_to_json(const NaCovarianceReport& r) {
    return {{"kind", "na_check"},
            {"n", r.n},
            {"k", r.k},
            {"trials", r.trials},
            {"seed", r.seed},
            {"max_covariance", r.max_covariance},
            {"mc_threshold", r.mc_threshold},
            {"vacuous", r.vacuous}};
}

std::string na_report_to_csv(const NaCovarianceReport& r) {
    std::ostringstream out;
    out << "n,k,trials,seed,max_covariance,threshold,vacuous\n";
    out << r.n << ',' << r.k << ',' << r.trials << ',' << r.seed << ','
        << fmt_double(r.max_covariance) << ',' << fmt_double(r.mc_threshold) << ','
        << (r.vacuous ? 1 : 0) << '\n';
    return out.str();
}

std::vector<double> parse_grid(const std::string& text) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw std::invalid_argument("grid: expected a:b:step, got '" + text + "'");
    if (step <= 0) throw std::invalid_argument("grid: step must be positive");
    if (b < a) throw std::invalid_argument("grid: end before start");
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double v = a + step * i;
        if (v > b + step / 2) break;
        values.push_back(v);
    }
    return values;
}

} // namespace treebij
