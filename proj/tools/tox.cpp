#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tox/commands.hpp"
#include "tox/oracle.hpp"

namespace {

using nlohmann::json;

void print_error(const std::string& code, const std::string& message) {
  std::cout << json{{"error", {{"code", code}, {"message", message}}}}.dump(2) << '\n';
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw tox::Error(tox::ErrorCode::InvalidProblem, "cannot read vector entry '" + item + "'");
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-ordered exponentials by star-Lanczos and path-sum"};
  app.require_subcommand(1);

  std::string problem_file, example_name, out_dir, w_text, v_text, n_list_text = "1,2,3",
                                                                   grid_text = "101,201,401";
  int nodes = 0, depth = 0, j_max = -1, samples = 50;
  bool oracle = false;

  auto add_common = [&](CLI::App* sub) {
    auto* group = sub->add_option_group("source");
    group->add_option("--problem", problem_file, "problem file (JSON)");
    group->add_option("--example", example_name, "built-in problem name");
    group->require_option(1);
    sub->add_option("--nodes", nodes, "number of grid nodes")->check(CLI::PositiveNumber);
    sub->add_option("--depth", depth, "Krylov depth n")->check(CLI::PositiveNumber);
    sub->add_option("--w", w_text, "override w, comma separated");
    sub->add_option("--v", v_text, "override v, comma separated");
    sub->add_option("--out", out_dir, "directory for CSV grids and report.json");
  };

  auto* solve = app.add_subcommand("solve", "approximate w^H U(t', t_start) v");
  add_common(solve);
  solve->add_flag("--oracle", oracle, "also integrate with RK4 and report the difference");
  auto* tridiag = app.add_subcommand("tridiag", "run star-Lanczos and write the coefficients");
  add_common(tridiag);
  auto* moments = app.add_subcommand("moments", "compare star-moments of A and T_n");
  add_common(moments);
  moments->add_option("--jmax", j_max, "largest moment order (default 2n+1)");
  auto* bound = app.add_subcommand("bound", "a-priori error bound against the RK4 error");
  add_common(bound);
  bound->add_option("--n-list", n_list_text, "depths, comma separated");
  bound->add_option("--samples", samples, "number of t' samples")->check(CLI::PositiveNumber);
  auto* conv = app.add_subcommand("conv", "observed order under grid refinement");
  add_common(conv);
  conv->add_option("--grids", grid_text, "node counts, comma separated");
  auto* example = app.add_subcommand("example", "print a built-in problem as JSON");
  std::string shown;
  example->add_option("name", shown, "problem name (omit to list)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage-error", e.what());
    return 2;
  }

  try {
    if (example->parsed()) {
      if (shown.empty()) {
        json names = json::array();
        for (const auto& [name, spec] : tox::example_library()) names.push_back(name);
        std::cout << names.dump(2) << '\n';
      } else {
        std::cout << tox::problem_to_json(tox::library_problem(shown)).dump(2) << '\n';
      }
      return 0;
    }

    tox::ProblemSpec spec =
        problem_file.empty() ? tox::library_problem(example_name) : tox::load_problem(problem_file);
    if (nodes > 0) spec.n_nodes = nodes;
    if (depth > 0) spec.depth = depth;
    if (!w_text.empty()) spec.w = parse_vector(w_text);
    if (!v_text.empty()) spec.v = parse_vector(v_text);
    tox::validate(spec);

    tox::RunOptions run{out_dir, oracle};
    json report;
    if (solve->parsed()) {
      report = tox::cmd_solve(spec, run);
    } else if (tridiag->parsed()) {
      report = tox::cmd_tridiagonalize(spec, run);
    } else if (moments->parsed()) {
      report = tox::cmd_moments(spec, j_max >= 0 ? j_max : 2 * spec.effective_depth() + 1, run);
    } else if (bound->parsed()) {
      std::vector<int> ns;
      for (double x : parse_vector(n_list_text)) ns.push_back(static_cast<int>(x));
      report = tox::cmd_bound(spec, ns, samples, run);
    } else {
      std::vector<int> grids;
      for (double x : parse_vector(grid_text)) grids.push_back(static_cast<int>(x));
      report = tox::cmd_convergence(spec, grids, run);
    }

    const std::string text = report.dump(2);
    std::cout << text << '\n';
    if (!out_dir.empty()) {
      std::ofstream out(out_dir + "/report.json");
      if (!out) throw tox::Error(tox::ErrorCode::IoError, "cannot write report.json");
      out << text << '\n';
    }
    return 0;
  } catch (const tox::Error& e) {
    print_error(tox::error_code_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal-error", e.what());
    return 1;
  }
}
