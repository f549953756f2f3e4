#include <doctest.h>

#include "support.hpp"
#include "tox/oracle.hpp"
#include "tox/pathsum.hpp"

using namespace tox;

namespace {

struct Setup {
  StarMatrix<double> a;
  Vec<double> w, v;
  BivariateTable fns;
};

Setup setup(ProblemSpec spec, int nodes) {
  spec.n_nodes = nodes;
  const CompiledProblem p = compile(spec);
  return Setup{assemble<double>(p.grid, p.fns), p.w, p.v, p.fns};
}

Setup setup(const std::string& name, int nodes) { return setup(library_problem(name), nodes); }

// Entry (1,1) of (Id - T)^{*-1} from the assembled block system, via dense LU.
GridOperator<double> block_route(const TridiagonalResult<double>& r) {
  const auto t = tridiagonal_matrix(r);
  return star_matrix_resolvent(t)(0, 0);
}

}  // namespace

TEST_CASE("scalar constant: n = 1 solves u' = a u") {
  const auto s = setup("scalar", 401);
  const Vec<double> u = approx_u(s.a, s.w, s.v, 1);
  const auto& g = s.a.grid();
  for (int i = 0; i < g.n_nodes(); ++i) CHECK(std::abs(u(i) - std::exp(-0.5 * g.node(i))) <= g.dt());
}

TEST_CASE("example1 resolvent entry and approximant") {
  const auto s = setup("example1", 401);
  const auto r = star_lanczos(s.a, s.w, s.v, 3);
  const auto r11 = pathsum_resolvent_11(r);
  const auto& g = s.a.grid();
  // The resolvent column carries the delta at t' = t; compare the smooth part.
  const auto smooth = r11 - delta_operator<double>(g, 0);
  const double rt2 = std::sqrt(2.0);
  double err = 0;
  for (int i = 1; i < g.n_nodes(); ++i) {
    const double t = g.node(i);
    const double expected = std::sinh(2 * t) + std::sinh(rt2 * t) / rt2 - std::cosh(2 * t);
    err = std::max(err, std::abs(smooth(i, 0) - expected));
  }
  CHECK(err <= 10 * g.dt());

  const Vec<double> u = approximant(r);
  double worst = 0;
  for (int i = 0; i < g.n_nodes(); ++i) worst = std::max(worst, std::abs(u(i) - example1_u11(g.node(i))));
  CHECK(worst <= 0.05);
  CHECK(example1_u11(1.0) == doctest::Approx(1.1568).epsilon(1e-4));
}

TEST_CASE("example2 at n = N against RK4") {
  const auto s = setup("example2", 201);
  const Vec<double> u = approx_u(s.a, s.w, s.v, 5);
  const Vec<double> ref = rk4_bilinear(s.fns, s.a.grid(), s.w, s.v, 50);
  CHECK((u - ref).cwiseAbs().maxCoeff() <= 5 * s.a.grid().dt());
}

TEST_CASE("zero matrix gives the identity propagator") {
  const auto s = setup("zero", 101);
  const Vec<double> u = approx_u(s.a, s.w, s.v, 1);
  CHECK((u.array() - 1.0).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("continued fraction equals the block inverse") {
  const auto s = setup(random_problem(3, 5), 41);
  for (int n = 1; n <= 5; ++n) {
    const auto r = star_lanczos(s.a, s.w, s.v, n);
    REQUIRE(r.status == LanczosStatus::Completed);
    CHECK(relative_deviation(pathsum_resolvent_11(r), block_route(r)) <= 1e-8);
  }
}

TEST_CASE("full-depth route equals the direct resolvent") {
  for (const auto& spec : {library_problem("example1"), random_problem(7, 4)}) {
    const auto s = setup(spec, 61);
    const Vec<double> a = approx_u(s.a, s.w, s.v, s.a.rows());
    const Vec<double> b = direct_u(s.a, s.w, s.v);
    CHECK((a - b).norm() <= 1e-8 * b.norm());
  }
}

TEST_CASE("approximant error decreases with depth on example2") {
  const auto s = setup("example2", 201);
  const Vec<double> ref = rk4_bilinear(s.fns, s.a.grid(), s.w, s.v, 50);
  double prev = 1e300;
  for (int n = 1; n <= 5; ++n) {
    const double err = (approx_u(s.a, s.w, s.v, n) - ref).cwiseAbs().maxCoeff();
    CHECK(err <= 1.1 * prev);
    prev = err;
  }
}

TEST_CASE("error bound") {
  const auto s = setup("example1", 101);
  const auto r1 = star_lanczos(s.a, s.w, s.v, 1);
  CHECK(error_bound(s.a, r1, 0.3, 0.3) == 0.0);
  const BoundTerms terms = bound_terms(s.a, r1);
  CHECK(terms.c == 3.0);
  // n = 1: D_1 = 3 max|alpha_0| = 3.
  CHECK(terms.d_n == doctest::Approx(3.0));
  const double expected = (9.0 + 9.0) / 2.0 * 0.25 * std::exp(6.0 * 0.5);
  CHECK(error_bound(s.a, r1, 0.5, 0.0) == doctest::Approx(expected).epsilon(1e-12));

  // Away from t' = t the bound dominates the observed error for n = 1.
  const Vec<double> u = approximant(r1);
  const auto& g = s.a.grid();
  for (int i = 10; i < g.n_nodes(); ++i) {
    CHECK(std::abs(u(i) - example1_u11(g.node(i))) <= error_bound(s.a, r1, g.node(i), 0.0));
  }

  // With D held at a common value the bound decreases from n = 1 to n = 2 on [0, 0.3].
  const auto r2 = star_lanczos(s.a, s.w, s.v, 2);
  BoundTerms t1 = bound_terms(s.a, r1), t2 = bound_terms(s.a, r2);
  t1.d_n = t2.d_n = std::max(t1.d_n, t2.d_n);
  for (double tp : {0.05, 0.1, 0.2, 0.3}) CHECK(error_bound_value(t2, tp) <= error_bound_value(t1, tp));

  BoundTerms huge{1e3, 1e3, 50};
  CHECK(std::isinf(error_bound_value(huge, 10.0)));
}
