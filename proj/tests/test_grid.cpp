#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tox/star_core.hpp"

using namespace tox;

TEST_CASE("make_grid spacing and nodes") {
  const auto g = make_grid(0, 1, 5);
  CHECK(g.dt() == 0.25);
  const std::vector<double> expected{0, 0.25, 0.5, 0.75, 1};
  CHECK(g.nodes() == expected);

  const auto g2 = make_grid(0, 1, 2);
  CHECK(g2.dt() == 1.0);
  CHECK(g2.nodes() == std::vector<double>{0, 1});

  const auto g3 = make_grid(-1, 1, 3);
  CHECK(g3.dt() == 1.0);
  CHECK(g3.nodes() == std::vector<double>{-1, 0, 1});
}

TEST_CASE("make_grid rejects bad input") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code_of([] { make_grid(1, 1, 5); }) == ErrorCode::InvalidInterval);
  CHECK(code_of([] { make_grid(2, 1, 5); }) == ErrorCode::InvalidInterval);
  CHECK(code_of([] { make_grid(0, 1, 1); }) == ErrorCode::InvalidSize);
}

TEST_CASE("nodes are strictly increasing and evenly spaced") {
  const auto g = make_grid(-0.3, 2.7, 401);
  const auto x = g.nodes();
  for (std::size_t i = 1; i < x.size(); ++i) {
    CHECK(x[i] > x[i - 1]);
    CHECK(std::abs((x[i] - x[i - 1]) - g.dt()) <= 4 * std::numeric_limits<double>::epsilon() * 3.0);
  }
}

TEST_CASE("theta operator") {
  const auto t3 = theta_operator<double>(make_grid(0, 1, 3));
  Mat<double> e(3, 3);
  e << 1, 0, 0, 1, 1, 0, 1, 1, 1;
  CHECK(t3.data() == e);
  Mat<double> e2(2, 2);
  e2 << 1, 0, 1, 1;
  CHECK(theta_operator<double>(make_grid(0, 1, 2)).data() == e2);

  const auto g = make_grid(0, 1, 401);
  const auto th = theta_operator<double>(g);
  CHECK(star_product(th, th)(400, 0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("delta operator") {
  const auto d0 = delta_operator<double>(make_grid(0, 1, 3), 0);
  CHECK(d0.data() == 2.0 * Mat<double>::Identity(3, 3));

  Mat<double> e(3, 3);
  e << 1, 0, 0, -1, 1, 0, 0, -1, 1;
  CHECK(delta_operator<double>(make_grid(0, 2, 3), 1).data() == e);

  const auto d2 = delta_operator<double>(make_grid(0, 3, 4), 2);
  CHECK(d2(3, 3) == 1);
  CHECK(d2(3, 2) == -2);
  CHECK(d2(3, 1) == 1);
  CHECK(d2(3, 0) == 0);

  try {
    delta_operator<double>(make_grid(0, 1, 3), 3);
    FAIL("expected unsupported-order");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::UnsupportedOrder);
  }
}

TEST_CASE("sample_smooth") {
  const auto g = make_grid(0, 1, 7);
  CHECK(sample_smooth<double>(g, [](double, double) { return 1.0; }).data() ==
        theta_operator<double>(g).data());

  Mat<double> e(3, 3);
  e << 0, 0, 0, 1, 0, 0, 2, 1, 0;
  CHECK(sample_smooth<double>(make_grid(0, 2, 3), [](double tp, double t) { return tp - t; }).data() == e);

  const auto c = sample_smooth<double>(make_grid(0, M_PI, 2), [](double tp, double) { return std::cos(tp); });
  CHECK(c(0, 0) == 1.0);
  CHECK(c(1, 0) == std::cos(M_PI));
  CHECK(c(1, 1) == std::cos(M_PI));
  CHECK(c(0, 1) == 0.0);
}

TEST_CASE("constructors produce an exactly zero strict upper triangle") {
  const auto g = make_grid(0, 1, 9);
  Mat<double> full = Mat<double>::Ones(9, 9);
  const GridOperator<double> ops[] = {theta_operator<double>(g), delta_operator<double>(g, 3),
                                      sample_smooth<double>(g, [](double a, double b) { return a * b + 1; }),
                                      GridOperator<double>(g, full)};
  for (const auto& op : ops) {
    CHECK(op.data().triangularView<Eigen::StrictlyUpper>().toDenseMatrix().isZero(0.0));
  }
}

TEST_CASE("delta_0 is a two-sided identity up to one rounding") {
  const auto g = make_grid(0, 1.3, 157);
  std::mt19937_64 rng(3);
  const auto f = test::random_operator(g, rng);
  const auto d0 = delta_operator<double>(g, 0);
  for (const auto& p : {star_product(d0, f), star_product(f, d0)}) {
    const Mat<double> diff = (p.data() - f.data()).cwiseAbs();
    const Mat<double> bound = 2 * std::numeric_limits<double>::epsilon() * f.data().cwiseAbs();
    CHECK((diff.array() <= bound.array()).all());
  }
}

TEST_CASE("theta and delta' are mutual inverses on every row") {
  // With the full-weight diagonal the discrete identity holds on all rows,
  // including the first one, so the exempt range is empty.
  const auto g = make_grid(0, 1, 64);
  const auto th = theta_operator<double>(g);
  const auto d1 = delta_operator<double>(g, 1);
  const auto d0 = delta_operator<double>(g, 0);
  for (const auto& p : {star_product(th, d1), star_product(d1, th)}) {
    for (int i = 0; i < g.n_nodes(); ++i) {
      CHECK((p.data().row(i) - d0.data().row(i)).norm() <= 1e-12 * d0.norm());
    }
  }
}

TEST_CASE("trailing block is a homomorphism") {
  const auto g = make_grid(0, 1, 40);
  std::mt19937_64 rng(5);
  const auto f = test::random_operator(g, rng);
  const auto h = test::random_operator(g, rng);
  const auto lhs = star_product(f, h).trailing(7);
  const auto rhs = star_product(f.trailing(7), h.trailing(7));
  CHECK(test::rel(lhs.data(), rhs.data()) < 1e-14);
  CHECK(lhs.grid().node(0) == doctest::Approx(g.node(7)));
}
