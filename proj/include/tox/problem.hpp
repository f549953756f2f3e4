#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tox/star_lanczos.hpp"

namespace tox {

struct ProblemOptions {
  double tol_singular = kDefaultTolSingular;
  double tol_lucky = 1e-10;
  // RK4 steps per unit interval length; 0 selects 10^4 steps over the interval.
  int oracle_steps = 0;
};

struct ProblemSpec {
  std::string name;
  double t_start = 0.0;
  double t_end = 1.0;
  int n_nodes = 401;
  std::vector<std::vector<std::string>> matrix;  // entry expressions in t and tp
  std::vector<double> w;
  std::vector<double> v;
  int depth = 0;  // 0 means the matrix dimension
  ProblemOptions options;

  int dimension() const { return static_cast<int>(matrix.size()); }
  int effective_depth() const { return depth > 0 ? depth : dimension(); }
};

// Throws Error(invalid-problem) on schema violations and the library
// precondition codes (normalization-violation, depth-exceeds-dimension, ...).
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& spec);
ProblemSpec load_problem(const std::string& path);

// Checks shape, normalization and depth without compiling expressions.
void validate(const ProblemSpec& spec);

struct CompiledProblem {
  TimeGrid grid;
  BivariateTable fns;
  Vec<double> w;
  Vec<double> v;
  int depth;
};

CompiledProblem compile(const ProblemSpec& spec);

LanczosOptions lanczos_options(const ProblemSpec& spec);

}  // namespace tox
