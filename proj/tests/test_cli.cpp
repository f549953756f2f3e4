#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "tox/commands.hpp"
#include "tox/oracle.hpp"

using namespace tox;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(TOX_BINARY) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe.release());
  return Run{WEXITSTATUS(raw), out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "tox_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_problem(const std::string& name, const json& j) {
  const auto path = scratch(name);
  std::ofstream(path) << j.dump(2);
  return path.string();
}

}  // namespace

TEST_CASE("tridiag on example1") {
  const auto dir = scratch("ex1_out");
  std::filesystem::remove_all(dir);
  const Run r = run_cli("tridiag --example example1 --nodes 51 --out " + dir.string());
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["lanczos"]["status"] == "completed");
  CHECK(j["lanczos"]["alphas"] == 3);
  CHECK(j["lanczos"]["betas"] == 3);
  CHECK(j["biorthogonality"].get<double>() <= 1e-6);
  CHECK(std::filesystem::exists(dir / "alpha_0.csv"));
  CHECK(std::filesystem::exists(dir / "beta_3.csv"));
  CHECK(std::filesystem::exists(dir / "report.json"));

  std::ifstream csv(dir / "alpha_0.csv");
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 50);
  }
  CHECK(rows == 51);
}

TEST_CASE("tridiag on diag2 reports the lucky breakdown") {
  const Run r = run_cli("tridiag --example diag2 --nodes 51");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["lanczos"]["status"] == "lucky-breakdown");
  CHECK(j["lanczos"]["breakdown_step"] == 1);
}

TEST_CASE("normalization violation is rejected before computing") {
  ProblemSpec spec = library_problem("example1");
  spec.w = {0, 1, 0};
  const std::string path = write_problem("bad_norm.json", problem_to_json(spec));
  const Run r = run_cli("tridiag --problem " + path);
  CHECK(r.status != 0);
  CHECK(json::parse(r.out)["error"]["code"] == "normalization-violation");
}

TEST_CASE("error objects for malformed input") {
  ProblemSpec spec = library_problem("example1");
  spec.matrix[0][0] = "2t";
  Run r = run_cli("solve --problem " + write_problem("bad_expr.json", problem_to_json(spec)));
  CHECK(r.status != 0);
  CHECK(json::parse(r.out)["error"]["code"] == "syntax-error");

  r = run_cli("solve --problem /nonexistent/problem.json");
  CHECK(r.status != 0);
  CHECK(json::parse(r.out)["error"]["code"] == "io-error");

  json j = problem_to_json(library_problem("example1"));
  j.erase("w");
  r = run_cli("solve --problem " + write_problem("no_w.json", j));
  CHECK(json::parse(r.out)["error"]["code"] == "invalid-problem");

  r = run_cli("solve --example example1 --depth 4");
  CHECK(json::parse(r.out)["error"]["code"] == "depth-exceeds-dimension");

  r = run_cli("frobnicate");
  CHECK(r.status == 2);
  CHECK(json::parse(r.out)["error"]["code"] == "usage-error");
}

TEST_CASE("solve") {
  Run r = run_cli("solve --example example1 --oracle");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["max_abs_diff"].get<double>() <= 0.05);
  CHECK(j["series"].size() == 401);
  CHECK(j["series"][400]["oracle"].get<double>() == doctest::Approx(example1_u11(1.0)).epsilon(1e-9));

  r = run_cli("solve --example zero --nodes 101 --oracle");
  j = json::parse(r.out);
  CHECK(j["max_abs_diff"].get<double>() <= 1e-12);
}

TEST_CASE("full-vector recipe recovers an off-diagonal propagator entry") {
  // e_1^H U e_2 = (e + e_1)^H U e_2 - e^H U e_2, with e = (1, 1, 1).
  auto last = [](const std::string& args) {
    const json j = json::parse(run_cli(args).out);
    return j["series"].back()["approx"].get<double>();
  };
  const std::string base = "solve --example example1 --nodes 201 --v 0,1,0 --depth 3";
  const double combo = last(base + " --w 2,1,1") - last(base + " --w 1,1,1");
  const CompiledProblem p = compile(library_problem("example1"));
  const double exact = rk4_propagator(p.fns, 0, 1, 2000)(0, 1);
  CHECK(std::abs(combo - exact) <= 0.05);
}

TEST_CASE("moments on example2") {
  const Run r = run_cli("moments --example example2 --nodes 101 --jmax 9");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["moments"].size() == 10);
  for (const auto& m : j["moments"]) CHECK(m["deviation"].get<double>() <= 1e-8);

  const json k = json::parse(run_cli("moments --example example1 --nodes 101 --depth 2 --jmax 4").out);
  CHECK(k["moments"][4]["guaranteed"] == false);
}

TEST_CASE("bound and convergence reports") {
  json j = json::parse(run_cli("bound --example example1 --nodes 101 --n-list 1,2 --samples 10").out);
  REQUIRE(j["runs"].size() == 2);
  CHECK(j["runs"][0]["C"].get<double>() == 3.0);
  CHECK(j["runs"][0]["samples"][0]["bound"].get<double>() == 0.0);

  j = json::parse(run_cli("conv --example example1").out);
  const double p = j["order"].get<double>();
  CHECK(p >= 0.7);
  CHECK(p <= 1.3);
  for (const auto& q : j["oracle_self_study"]["orders"]) CHECK(q.get<double>() == doctest::Approx(4).epsilon(0.075));

  j = json::parse(run_cli("conv --example zero --grids 21,41").out);
  CHECK(j.contains("order_fit"));
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string args = "solve --example random8 --nodes 41 --depth 4 --oracle";
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("example subcommand round-trips through the problem loader") {
  const Run r = run_cli("example example2");
  REQUIRE(r.status == 0);
  const ProblemSpec spec = problem_from_json(json::parse(r.out));
  CHECK(spec.matrix == library_problem("example2").matrix);
}

TEST_CASE("observed_orders") {
  CHECK(observed_orders({0.1, 0.05}, {1e-2, 5e-3}).front() == doctest::Approx(1.0));
  CHECK(observed_orders({0.1, 0.05}, {1e-16, 1e-16}).empty());
}
