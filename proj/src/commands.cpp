#include "tox/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tox/oracle.hpp"
#include "tox/pathsum.hpp"

namespace tox {

namespace {

using nlohmann::json;

struct Prepared {
  CompiledProblem problem;
  StarMatrix<double> a;
};

Prepared prepare(const ProblemSpec& spec) {
  CompiledProblem p = compile(spec);
  StarMatrix<double> a = assemble<double>(p.grid, p.fns);
  return Prepared{std::move(p), std::move(a)};
}

json header(const std::string& command, const ProblemSpec& spec) {
  return json{{"command", command},
              {"problem", spec.name},
              {"interval", {spec.t_start, spec.t_end}},
              {"n_nodes", spec.n_nodes},
              {"dimension", spec.dimension()},
              {"requested_depth", spec.effective_depth()}};
}

json lanczos_summary(const TridiagonalResult<double>& r) {
  json j{{"status", status_name(r.status)},
         {"depth", r.depth},
         {"alphas", r.alphas.size()},
         {"betas", r.betas.size()},
         {"boundary_nodes", r.first_regular_node}};
  if (r.status != LanczosStatus::Completed) {
    j["breakdown_step"] = r.breakdown_step;
    j["message"] = r.message;
  }
  return j;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + dir + "'");
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  return out;
}

double max_abs_diff(const Vec<double>& a, const Vec<double>& b) { return (a - b).cwiseAbs().maxCoeff(); }

Vec<double> oracle_series(const Prepared& p, const ProblemSpec& spec) {
  return rk4_bilinear(p.problem.fns, p.problem.grid, p.problem.w, p.problem.v,
                      oracle_substeps(p.problem.grid, spec.options.oracle_steps));
}

}  // namespace

void write_operator_csv(const std::string& path, const GridOperator<double>& op) {
  std::ofstream out = open_out(path);
  const int n = op.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ',';
      out << fmt(op(i, j));
    }
    out << '\n';
  }
}

std::vector<double> observed_orders(const std::vector<double>& h, const std::vector<double>& err,
                                    double floor) {
  std::vector<double> out;
  for (double e : err) {
    if (!(e > floor)) return {};
  }
  for (std::size_t k = 0; k + 1 < err.size(); ++k) {
    out.push_back(std::log(err[k] / err[k + 1]) / std::log(h[k] / h[k + 1]));
  }
  return out;
}

json cmd_tridiagonalize(const ProblemSpec& spec, const RunOptions& run) {
  const Prepared p = prepare(spec);
  const auto r = star_lanczos(p.a, p.problem.w, p.problem.v, p.problem.depth, lanczos_options(spec));
  json report = header("tridiag", spec);
  report["lanczos"] = lanczos_summary(r);
  report["biorthogonality"] = check_biorthogonality(r);
  double worst = 0.0;
  if (r.status != LanczosStatus::SeriousBreakdown) {
    for (int j = 0; j < 2 * r.depth; ++j) {
      worst = std::max(worst, relative_deviation(tridiagonal_moment(r, j),
                                                 bilinear_moment(p.a, p.problem.w, p.problem.v, j),
                                                 r.first_regular_node));
    }
    report["moment_deviation_max"] = worst;
  }
  if (!run.out_dir.empty()) {
    ensure_dir(run.out_dir);
    json files = json::array();
    for (std::size_t k = 0; k < r.alphas.size(); ++k) {
      const std::string f = "alpha_" + std::to_string(k) + ".csv";
      write_operator_csv(join(run.out_dir, f), r.alphas[k]);
      files.push_back(f);
    }
    for (std::size_t k = 0; k < r.betas.size(); ++k) {
      const std::string f = "beta_" + std::to_string(k + 1) + ".csv";
      write_operator_csv(join(run.out_dir, f), r.betas[k]);
      files.push_back(f);
    }
    report["files"] = files;
  }
  return report;
}

json cmd_solve(const ProblemSpec& spec, const RunOptions& run) {
  const Prepared p = prepare(spec);
  const auto r = star_lanczos(p.a, p.problem.w, p.problem.v, p.problem.depth, lanczos_options(spec));
  json report = header("solve", spec);
  report["lanczos"] = lanczos_summary(r);
  if (r.status == LanczosStatus::SeriousBreakdown) return report;
  const Vec<double> u = approximant(r, spec.options.tol_singular);
  const TimeGrid& g = p.problem.grid;
  Vec<double> ref;
  if (run.oracle) {
    ref = oracle_series(p, spec);
    report["oracle"] = {{"method", "rk4"}, {"substeps", oracle_substeps(g, spec.options.oracle_steps)}};
    report["max_abs_diff"] = max_abs_diff(u, ref);
  }
  json series = json::array();
  for (int i = 0; i < g.n_nodes(); ++i) {
    json row{{"t", g.node(i)}, {"approx", u(i)}};
    if (run.oracle) row["oracle"] = ref(i);
    series.push_back(row);
  }
  report["series"] = series;
  if (!run.out_dir.empty()) {
    ensure_dir(run.out_dir);
    std::ofstream out = open_out(join(run.out_dir, "series.csv"));
    out << (run.oracle ? "t,approx,oracle\n" : "t,approx\n");
    for (int i = 0; i < g.n_nodes(); ++i) {
      out << fmt(g.node(i)) << ',' << fmt(u(i));
      if (run.oracle) out << ',' << fmt(ref(i));
      out << '\n';
    }
  }
  return report;
}

json cmd_moments(const ProblemSpec& spec, int j_max, const RunOptions&) {
  const Prepared p = prepare(spec);
  const auto r = star_lanczos(p.a, p.problem.w, p.problem.v, p.problem.depth, lanczos_options(spec));
  json report = header("moments", spec);
  report["lanczos"] = lanczos_summary(r);
  if (r.status == LanczosStatus::SeriousBreakdown) return report;
  json table = json::array();
  for (int j = 0; j <= j_max; ++j) {
    const double dev = relative_deviation(tridiagonal_moment(r, j),
                                          bilinear_moment(p.a, p.problem.w, p.problem.v, j),
                                          r.first_regular_node);
    table.push_back({{"j", j}, {"deviation", dev}, {"guaranteed", j < 2 * r.depth}});
  }
  report["moments"] = table;
  return report;
}

json cmd_bound(const ProblemSpec& spec, const std::vector<int>& n_list, int samples, const RunOptions& run) {
  const Prepared p = prepare(spec);
  const TimeGrid& g = p.problem.grid;
  const Vec<double> ref = oracle_series(p, spec);
  const int stride = std::max(1, (g.n_nodes() - 1) / std::max(1, samples));
  json report = header("bound", spec);
  json runs = json::array();
  for (int n : n_list) {
    ProblemSpec s = spec;
    s.depth = n;
    validate(s);
    const auto r = star_lanczos(p.a, p.problem.w, p.problem.v, n, lanczos_options(spec));
    json entry{{"n", n}, {"lanczos", lanczos_summary(r)}};
    if (r.status != LanczosStatus::SeriousBreakdown) {
      const Vec<double> u = approximant(r, spec.options.tol_singular);
      const BoundTerms terms = bound_terms(p.a, r);
      entry["C"] = terms.c;
      entry["D_n"] = terms.d_n;
      json pts = json::array();
      int violations = 0;
      for (int i = 0; i < g.n_nodes(); i += stride) {
        const double err = std::abs(u(i) - ref(i));
        const double bound = error_bound_value(terms, g.node(i) - g.t_start());
        if (err > bound) ++violations;
        pts.push_back({{"t", g.node(i)}, {"error", err}, {"bound", bound}});
      }
      entry["samples"] = pts;
      entry["violations"] = violations;
    }
    runs.push_back(entry);
  }
  report["runs"] = runs;
  (void)run;
  return report;
}

json cmd_convergence(const ProblemSpec& spec, const std::vector<int>& grid_list, const RunOptions&) {
  json report = header("conv", spec);
  std::vector<double> hs, errs;
  json rows = json::array();
  for (int nodes : grid_list) {
    ProblemSpec s = spec;
    s.n_nodes = nodes;
    const Prepared p = prepare(s);
    const auto r = star_lanczos(p.a, p.problem.w, p.problem.v, p.problem.depth, lanczos_options(s));
    if (r.status == LanczosStatus::SeriousBreakdown) {
      throw Error(ErrorCode::BreakdownSingular,
                  "serious breakdown at step " + std::to_string(r.breakdown_step) + " with " +
                      std::to_string(nodes) + " nodes");
    }
    const double err = max_abs_diff(approximant(r, s.options.tol_singular), oracle_series(p, s));
    hs.push_back(p.problem.grid.dt());
    errs.push_back(err);
    rows.push_back({{"n_nodes", nodes}, {"dt", p.problem.grid.dt()}, {"max_abs_diff", err}});
  }
  report["runs"] = rows;
  const auto orders = observed_orders(hs, errs);
  if (orders.empty()) {
    report["order_fit"] = "skipped: errors at rounding level";
  } else {
    report["orders"] = orders;
    report["order"] = orders.back();
  }

  // RK4 self-study: w^H U(t_end) v at 20, 40, 80 steps against 5120 steps.
  const CompiledProblem cp = compile(spec);
  auto value = [&](int steps) {
    return cp.w.dot(rk4_propagator(cp.fns, spec.t_start, spec.t_end, steps) * cp.v);
  };
  const double truth = value(5120);
  std::vector<double> oh, oe;
  for (int steps : {20, 40, 80}) {
    oh.push_back((spec.t_end - spec.t_start) / steps);
    oe.push_back(std::abs(value(steps) - truth));
  }
  const auto oracle_orders = observed_orders(oh, oe, 1e-14);
  json oracle{{"steps", {20, 40, 80}}, {"errors", oe}};
  if (oracle_orders.empty()) {
    oracle["order_fit"] = "skipped: errors at rounding level";
  } else {
    oracle["orders"] = oracle_orders;
  }
  report["oracle_self_study"] = oracle;
  return report;
}

}  // namespace tox
