#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "treebij/analysis.hpp"
#include "treebij/io.hpp"

using namespace treebij;
using namespace treebij::testing;

TEST_CASE("mapping text format") {
    const Endofunction f = parse_mapping_line("3 7 8 6 2 1 2 1");
    CHECK_EQ(f, map1({3, 7, 8, 6, 2, 1, 2, 1}));
    CHECK_EQ(format_mapping_line(f), "3 7 8 6 2 1 2 1");
    CHECK_EQ(format_mapping_line(parse_mapping_line("  1\t2   2 ")), "1 2 2");

    CHECK_THROWS_AS(parse_mapping_line(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_mapping_line("1 2 5"), std::invalid_argument);  // out of range
    CHECK_THROWS_AS(parse_mapping_line("1 0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mapping_line("1 two"), std::invalid_argument);
}

TEST_CASE("tree text format") {
    std::istringstream in("3\n1 2\n2 3\n");
    const LabeledTree t = parse_tree_text(in);
    CHECK_EQ(t.edges(), edges1({{1, 2}, {2, 3}}));
    CHECK_EQ(format_tree_text(t), "3\n1 2\n2 3\n");

    std::istringstream single("1\n");
    CHECK_EQ(parse_tree_text(single).n(), 1);

    std::istringstream missing("3\n1 2\n");
    CHECK_THROWS_AS(parse_tree_text(missing), std::invalid_argument);
    std::istringstream range("2\n1 3\n");
    CHECK_THROWS_AS(parse_tree_text(range), std::invalid_argument);
    std::istringstream invalid("3\n1 2\n1 2\n");
    CHECK_THROWS_AS(parse_tree_text(invalid), std::invalid_argument);
}

TEST_CASE("doubly rooted tree JSON") {
    const DoublyRootedTree d(tree1(3, {{2, 3}, {1, 2}}), 2, 0);
    const nlohmann::json j = doubly_rooted_tree_to_json(d);
    CHECK_EQ(j.at("n").get<int>(), 3);
    CHECK_EQ(j.at("root1").get<int>(), 3);
    CHECK_EQ(j.at("root2").get<int>(), 1);
    CHECK_EQ(j.at("edges"), nlohmann::json::parse("[[1,2],[2,3]]")); // canonical order

    const DoublyRootedTree back = doubly_rooted_tree_from_json(j);
    CHECK_EQ(back, d);

    CHECK_THROWS_AS(doubly_rooted_tree_from_json(nlohmann::json::parse("{\"n\":2}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(doubly_rooted_tree_from_json(nlohmann::json::parse(
                        "{\"n\":2,\"root1\":1,\"root2\":3,\"edges\":[[1,2]]}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(doubly_rooted_tree_from_json(nlohmann::json::parse(
                        "{\"n\":2,\"root1\":1,\"root2\":2,\"edges\":[[1,1]]}")),
                    std::invalid_argument);
}

TEST_CASE("grid parsing") {
    const auto grid = parse_grid("0.05:1.0:0.05");
    REQUIRE_EQ(grid.size(), 20);
    CHECK_EQ(grid.front(), doctest::Approx(0.05));
    CHECK_EQ(grid.back(), doctest::Approx(1.0));

    CHECK_EQ(parse_grid("1:3:1"), std::vector<double>{1.0, 2.0, 3.0});
    CHECK_EQ(parse_grid("0.5:0.5:0.1").size(), 1);

    CHECK_THROWS_AS(parse_grid("1:3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("3:1:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1:3:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("1:3:1 junk"), std::invalid_argument);
}

TEST_CASE("experiment CSV carries the fixed header") {
    const auto report = run_concentration_experiment(20, 4, 50, {0.5}, 3, 1);
    const std::string csv = experiment_report_to_csv(report);
    CHECK(csv.rfind("n,k,trials,seed,s,emp_lower,emp_upper,emp_two_sided,"
                    "bound_lower,bound_upper,bound_two_sided,azuma_bound\n",
                    0) == 0);
    CHECK(csv.find("\n20,4,50,3,0.5,") != std::string::npos);

    // Fixed column count on every line.
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        CHECK_EQ(std::count(line.begin(), line.end(), ','), 11);
    }

    const nlohmann::json j = experiment_report_to_json(report);
    CHECK_EQ(j.at("kind").get<std::string>(), "concentration");
    CHECK_EQ(j.at("rows").size(), 1);

    const auto core = run_core_size_experiment(6, 100, 4, 1);
    const std::string core_csv = experiment_report_to_csv(core);
    CHECK(core_csv.rfind("n,trials,seed,core_size,empirical,exact_pmf\n", 0) == 0);

    const auto na = na_covariance_check(5, 2, 100, 9, 1);
    CHECK(na_report_to_csv(na).rfind("n,k,trials,seed,max_covariance,threshold,vacuous\n", 0)
          == 0);
}
