#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tox/problem.hpp"

namespace tox {

struct RunOptions {
  std::string out_dir;  // empty: no CSV files
  bool oracle = false;
};

nlohmann::json cmd_tridiagonalize(const ProblemSpec& spec, const RunOptions& run);
nlohmann::json cmd_solve(const ProblemSpec& spec, const RunOptions& run);
nlohmann::json cmd_moments(const ProblemSpec& spec, int j_max, const RunOptions& run);
nlohmann::json cmd_bound(const ProblemSpec& spec, const std::vector<int>& n_list, int samples,
                         const RunOptions& run);
nlohmann::json cmd_convergence(const ProblemSpec& spec, const std::vector<int>& grid_list,
                               const RunOptions& run);

// Observed orders log(e_k / e_{k+1}) / log(h_k / h_{k+1}) for consecutive pairs;
// empty when any error is at rounding level.
std::vector<double> observed_orders(const std::vector<double>& h, const std::vector<double>& err,
                                    double floor = 1e-13);

// Square grid as CSV: one line per t' node, one column per t node.
void write_operator_csv(const std::string& path, const GridOperator<double>& op);

}  // namespace tox
