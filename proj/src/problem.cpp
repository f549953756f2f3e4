#include "tox/problem.hpp"

#include <cmath>
#include <fstream>

#include "tox/expr.hpp"

namespace tox {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidProblem, what); }

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) invalid(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
  const auto& x = field(j, key);
  if (!x.is_array()) invalid(std::string("'") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : x) {
    if (!e.is_number()) invalid(std::string("'") + key + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

ProblemSpec problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) invalid("problem must be a JSON object");
  ProblemSpec spec;
  spec.name = j.value("name", std::string());
  const auto interval = number_list(j, "interval");
  if (interval.size() != 2) invalid("'interval' must hold [t_start, t_end]");
  spec.t_start = interval[0];
  spec.t_end = interval[1];
  if (j.contains("n_nodes")) {
    if (!j.at("n_nodes").is_number_integer()) invalid("'n_nodes' must be an integer");
    spec.n_nodes = j.at("n_nodes").get<int>();
  }
  const auto& m = field(j, "matrix");
  if (!m.is_array()) invalid("'matrix' must be an array of rows");
  for (const auto& row : m) {
    if (!row.is_array()) invalid("'matrix' rows must be arrays");
    std::vector<std::string> out;
    for (const auto& e : row) {
      if (e.is_string()) {
        out.push_back(e.get<std::string>());
      } else if (e.is_number()) {
        out.push_back(e.dump());
      } else {
        invalid("matrix entries must be expression strings");
      }
    }
    spec.matrix.push_back(std::move(out));
  }
  spec.w = number_list(j, "w");
  spec.v = number_list(j, "v");
  if (j.contains("depth")) {
    if (!j.at("depth").is_number_integer()) invalid("'depth' must be an integer");
    spec.depth = j.at("depth").get<int>();
  }
  if (j.contains("options")) {
    const auto& o = j.at("options");
    if (!o.is_object()) invalid("'options' must be an object");
    spec.options.tol_singular = o.value("tol_singular", spec.options.tol_singular);
    spec.options.tol_lucky = o.value("tol_lucky", spec.options.tol_lucky);
    spec.options.oracle_steps = o.value("oracle_steps", spec.options.oracle_steps);
  }
  return spec;
}

nlohmann::json problem_to_json(const ProblemSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["interval"] = {spec.t_start, spec.t_end};
  j["n_nodes"] = spec.n_nodes;
  j["matrix"] = spec.matrix;
  j["w"] = spec.w;
  j["v"] = spec.v;
  j["depth"] = spec.effective_depth();
  j["options"] = {{"tol_singular", spec.options.tol_singular},
                  {"tol_lucky", spec.options.tol_lucky},
                  {"oracle_steps", spec.options.oracle_steps}};
  return j;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open problem file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidProblem, std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(j);
}

void validate(const ProblemSpec& spec) {
  const int n = spec.dimension();
  if (n < 1) invalid("matrix is empty");
  for (const auto& row : spec.matrix) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    }
  }
  if (static_cast<int>(spec.w.size()) != n || static_cast<int>(spec.v.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "w and v must have one entry per matrix row");
  }
  double wv = 0.0;
  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(spec.w[k]) || !std::isfinite(spec.v[k])) {
      throw Error(ErrorCode::NormalizationViolation, "w and v must be finite");
    }
    wv += spec.w[k] * spec.v[k];
  }
  if (std::abs(wv - 1.0) > 1e-12) {
    throw Error(ErrorCode::NormalizationViolation, "w^H v must equal 1");
  }
  if (spec.depth < 0 || spec.effective_depth() > n) {
    throw Error(ErrorCode::DepthExceedsDimension, "depth must lie in 1..N");
  }
  make_grid(spec.t_start, spec.t_end, spec.n_nodes);
}

CompiledProblem compile(const ProblemSpec& spec) {
  validate(spec);
  const int n = spec.dimension();
  BivariateTable fns(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      expr::Expr e = expr::parse(spec.matrix[r][c]);
      fns[r].push_back([e](double tp, double t) { return expr::eval(e, t, tp); });
    }
  }
  Vec<double> w = Eigen::Map<const Vec<double>>(spec.w.data(), n);
  Vec<double> v = Eigen::Map<const Vec<double>>(spec.v.data(), n);
  return CompiledProblem{make_grid(spec.t_start, spec.t_end, spec.n_nodes), std::move(fns), w, v,
                         spec.effective_depth()};
}

LanczosOptions lanczos_options(const ProblemSpec& spec) {
  LanczosOptions o;
  o.tol_singular = spec.options.tol_singular;
  o.tol_lucky = spec.options.tol_lucky;
  return o;
}

}  // namespace tox
