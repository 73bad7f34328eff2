#ifndef TREEBIJ_IO_HPP
#define TREEBIJ_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "treebij/analysis.hpp"
#include "treebij/bijection.hpp"
#include "treebij/graph_core.hpp"
#include "treebij/oracle.hpp"

namespace treebij {

// Text formats are 1-based. A mapping is one line of n integers, entry i
// holding f(i). A tree is a line with n followed by n-1 lines "u v".

Endofunction parse_mapping_line(const std::string& line);
std::string format_mapping_line(const Endofunction& f);

LabeledTree parse_tree_text(std::istream& in);
std::string format_tree_text(const LabeledTree& t);

// {"n":..., "root1":..., "root2":..., "edges":[[u,v],...]}, 1-based,
// edges sorted lexicographically. Extra keys are ignored on input.
nlohmann::json doubly_rooted_tree_to_json(const DoublyRootedTree& d);
DoublyRootedTree doubly_rooted_tree_from_json(const nlohmann::json& j);

nlohmann::json tree_to_json(const LabeledTree& t);
nlohmann::json delta_report_to_json(const DeltaReport& r);

nlohmann::json verification_report_to_json(const VerificationReport& r);

nlohmann::json experiment_report_to_json(const ExperimentReport& r);
// Threshold reports use the fixed header
//   n,k,trials,seed,s,emp_lower,emp_upper,emp_two_sided,
//   bound_lower,bound_upper,bound_two_sided,azuma_bound
// one row per threshold. The core_size kind instead pairs the sampled
// histogram with the closed-form pmf, one row per observed size.
std::string experiment_report_to_csv(const ExperimentReport& r);

nlohmann::json na_report_to_json(const NaCovarianceReport& r);
std::string na_report_to_csv(const NaCovarianceReport& r);

// "a:b:step" -> {a, a+step, ..., <= b (within half a step)}
std::vector<double> parse_grid(const std::string& text);

} // namespace treebij

#endif // TREEBIJ_IO_HPP
