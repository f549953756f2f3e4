#include <doctest.h>

#include "support.hpp"
#include "tox/oracle.hpp"

using namespace tox;

TEST_CASE("rk4 propagator") {
  const CompiledProblem zero = compile(library_problem("zero"));
  CHECK(rk4_propagator(zero.fns, 0, 1, 7) == Mat<double>::Identity(3, 3));

  const CompiledProblem e1 = compile(library_problem("example1"));
  CHECK(std::abs(rk4_propagator(e1.fns, 0, 1, 10000)(0, 0) - example1_u11(1.0)) <= 1e-9);

  const CompiledProblem sc = compile(library_problem("scalar_cos"));
  CHECK(std::abs(rk4_propagator(sc.fns, 0, 1, 10000)(0, 0) - std::exp(std::sin(1.0))) <= 1e-9);
}

TEST_CASE("rk4 observed order is four") {
  const CompiledProblem e1 = compile(library_problem("example1"));
  std::vector<double> err;
  for (int steps : {20, 40, 80}) err.push_back(std::abs(rk4_propagator(e1.fns, 0, 1, steps)(0, 0) - example1_u11(1.0)));
  for (std::size_t k = 0; k + 1 < err.size(); ++k) CHECK(std::log2(err[k] / err[k + 1]) == doctest::Approx(4).epsilon(0.075));
}

TEST_CASE("rk4 trajectory agrees with the propagator") {
  const CompiledProblem e2 = compile(library_problem("example2"));
  const auto g = make_grid(0, 0.5, 11);
  const auto traj = rk4_trajectory(e2.fns, g, 20);
  CHECK((traj.back() - rk4_propagator(e2.fns, 0, 0.5, 200)).norm() <= 1e-12);
}

TEST_CASE("brute_moment") {
  ProblemSpec spec = library_problem("example1");
  spec.n_nodes = 201;
  const CompiledProblem p = compile(spec);
  const auto a = assemble<double>(p.grid, p.fns);
  CHECK(brute_moment(a, p.w, p.v, 0).data() == delta_operator<double>(p.grid, 0).data());
  CHECK(test::pointwise_error(brute_moment(a, p.w, p.v, 2), [](double tp, double t) { return 3 * (tp - t); }) <=
        6 * p.grid.dt());
}

TEST_CASE("brute_moment equals bilinear_moment on library and random problems") {
  auto lib = example_library();
  lib["random-4"] = random_problem(42, 4);
  for (auto [name, spec] : lib) {
    spec.n_nodes = 31;
    const CompiledProblem p = compile(spec);
    const auto a = assemble<double>(p.grid, p.fns);
    for (int j = 0; j <= 6; ++j) {
      INFO(name << " j=" << j);
      CHECK(relative_deviation(brute_moment(a, p.w, p.v, j), bilinear_moment(a, p.w, p.v, j)) <= 1e-10);
    }
  }
}

TEST_CASE("example library") {
  const auto lib = example_library();
  for (const char* name : {"example1", "example2", "zero", "scalar", "scalar_cos", "diag2", "random8"}) {
    REQUIRE(lib.count(name) == 1);
    CHECK_NOTHROW(validate(lib.at(name)));
  }
  CHECK(lib.at("example1").matrix[0] == std::vector<std::string>{"-1", "1", "1"});
  CHECK(lib.at("example2").matrix[1][2] == "1 - 3*tp");
  CHECK(lib.at("random8").dimension() == 8);
  CHECK_THROWS_AS(library_problem("nope"), Error);
}

TEST_CASE("random problems are reproducible and normalized") {
  const auto a = random_problem(5, 6, 0.5);
  const auto b = random_problem(5, 6, 0.5);
  CHECK(a.matrix == b.matrix);
  CHECK(a.w == b.w);
  CHECK_NOTHROW(validate(a));
  CHECK(random_problem(6, 6).matrix != a.matrix);
}
