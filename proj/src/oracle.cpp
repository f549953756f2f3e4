#include "tox/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <random>

namespace tox {

namespace {

Mat<double> evaluate(const BivariateTable& fns, double tp, double t) {
  const int n = static_cast<int>(fns.size());
  Mat<double> a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = fns[r][c](tp, t);
  }
  return a;
}

void rk4_step(const BivariateTable& fns, double t0, double s, double h, Mat<double>& u) {
  const Mat<double> a0 = evaluate(fns, s, t0);
  const Mat<double> am = evaluate(fns, s + 0.5 * h, t0);
  const Mat<double> a1 = evaluate(fns, s + h, t0);
  const Mat<double> k1 = a0 * u;
  const Mat<double> k2 = am * (u + 0.5 * h * k1);
  const Mat<double> k3 = am * (u + 0.5 * h * k2);
  const Mat<double> k4 = a1 * (u + h * k3);
  u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Mat<double> rk4_propagator(const BivariateTable& fns, double t_start, double t_end, int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidSize, "RK4 needs at least one step");
  const int n = static_cast<int>(fns.size());
  Mat<double> u = Mat<double>::Identity(n, n);
  const double h = (t_end - t_start) / steps;
  for (int s = 0; s < steps; ++s) rk4_step(fns, t_start, t_start + s * h, h, u);
  return u;
}

std::vector<Mat<double>> rk4_trajectory(const BivariateTable& fns, const TimeGrid& grid, int substeps) {
  if (substeps < 1) throw Error(ErrorCode::InvalidSize, "RK4 needs at least one step");
  const int n = static_cast<int>(fns.size());
  const double t0 = grid.t_start();
  const double h = grid.dt() / substeps;
  std::vector<Mat<double>> out;
  out.reserve(grid.n_nodes());
  Mat<double> u = Mat<double>::Identity(n, n);
  out.push_back(u);
  for (int i = 1; i < grid.n_nodes(); ++i) {
    const double base = grid.node(i - 1);
    for (int s = 0; s < substeps; ++s) rk4_step(fns, t0, base + s * h, h, u);
    out.push_back(u);
  }
  return out;
}

Vec<double> rk4_bilinear(const BivariateTable& fns, const TimeGrid& grid, const Vec<double>& w,
                         const Vec<double>& v, int substeps) {
  const auto traj = rk4_trajectory(fns, grid, substeps);
  Vec<double> out(grid.n_nodes());
  for (int i = 0; i < grid.n_nodes(); ++i) out(i) = w.dot(traj[i] * v);
  return out;
}

int oracle_substeps(const TimeGrid& grid, int oracle_steps) {
  if (oracle_steps > 0) return oracle_steps;
  const int intervals = grid.n_nodes() - 1;
  return std::max(1, (10000 + intervals - 1) / intervals);
}

template <class T>
GridOperator<T> brute_moment(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int j) {
  if (a.rows() != a.cols() || w.size() != a.rows() || v.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "moment needs a square matrix and matching vectors");
  }
  if (j < 0) throw Error(ErrorCode::UnsupportedOrder, "negative moment order");
  if (j == 0) return w.dot(v) * delta_operator<T>(a.grid(), 0);
  StarMatrix<T> power = a;
  for (int k = 1; k < j; ++k) power = star_matmul(power, a);
  return contract(power, w, v);
}

template GridOperator<double> brute_moment<double>(const StarMatrix<double>&, const Vec<double>&,
                                                   const Vec<double>&, int);
template GridOperator<Complex> brute_moment<Complex>(const StarMatrix<Complex>&, const Vec<Complex>&,
                                                     const Vec<Complex>&, int);

double example1_u11(double t) {
  return -0.5 * std::sinh(2.0 * t) + 0.5 * std::cosh(2.0 * t) + 0.5 * std::cosh(std::sqrt(2.0) * t);
}

// Well-conditioned test matrices: a spread diagonal, a small symmetric
// time-dependent part and a smaller non-symmetric drift.
ProblemSpec random_problem(std::uint64_t seed, int size, double density) {
  if (size < 1) throw Error(ErrorCode::InvalidSize, "random problem size must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<int> perm(size);
  for (int k = 0; k < size; ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> diag(size);
  for (int k = 0; k < size; ++k) {
    diag[k] = size == 1 ? 0.0 : -1.5 + 3.0 * perm[k] / (size - 1);
  }

  struct Coef { double c0, c1, c2; };
  std::vector<std::vector<Coef>> sym(size, std::vector<Coef>(size));
  std::vector<std::vector<bool>> keep(size, std::vector<bool>(size, true));
  for (int r = 0; r < size; ++r) {
    for (int c = r; c < size; ++c) {
      sym[r][c] = {0.3 * unit(rng), 0.3 * unit(rng), 0.3 * unit(rng)};
      sym[c][r] = sym[r][c];
      if (r != c) keep[r][c] = keep[c][r] = coin(rng) < density;
    }
  }

  ProblemSpec spec;
  spec.name = "random-" + std::to_string(seed) + "-" + std::to_string(size);
  spec.t_start = 0.0;
  spec.t_end = 1.0;
  spec.n_nodes = 101;
  spec.matrix.assign(size, std::vector<std::string>(size, "0"));
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double k0 = 0.1 * unit(rng);
      const double k1 = 0.1 * unit(rng);
      if (!keep[r][c]) continue;
      const Coef& s = sym[r][c];
      const double constant = (r == c ? diag[r] : 0.0) + s.c0 + k0;
      spec.matrix[r][c] = num(constant) + " + " + num(s.c1 + k1) + "*tp + " + num(s.c2) + "*cos(2*tp)";
    }
  }

  std::uniform_real_distribution<double> mag(0.3, 1.0);
  std::vector<double> v(size), w(size);
  double norm = 0.0;
  for (int k = 0; k < size; ++k) {
    v[k] = mag(rng) * (coin(rng) < 0.5 ? -1.0 : 1.0);
    norm += v[k] * v[k];
  }
  norm = std::sqrt(norm);
  double wv = 0.0;
  for (int k = 0; k < size; ++k) {
    v[k] /= norm;
    w[k] = v[k] + 0.1 * unit(rng);
    wv += w[k] * v[k];
  }
  for (int k = 0; k < size; ++k) w[k] /= wv;
  spec.w = w;
  spec.v = v;
  spec.depth = size;
  return spec;
}

std::map<std::string, ProblemSpec> example_library() {
  std::map<std::string, ProblemSpec> lib;

  ProblemSpec e1;
  e1.name = "example1";
  e1.t_start = 0.0;
  e1.t_end = 1.0;
  e1.matrix = {{"-1", "1", "1"}, {"1", "0", "1"}, {"1", "1", "-1"}};
  e1.w = e1.v = {1, 0, 0};
  e1.depth = 3;
  lib[e1.name] = e1;

  ProblemSpec e2;
  e2.name = "example2";
  e2.t_start = 0.0;
  e2.t_end = 0.5;
  e2.matrix = {
      {"cos(tp)", "0", "1", "2", "1"},
      {"0", "cos(tp) - tp", "1 - 3*tp", "tp", "0"},
      {"0", "tp", "2*tp + cos(tp)", "0", "0"},
      {"0", "1", "2*tp + 1", "tp + cos(tp)", "tp"},
      {"tp", "-tp - 1", "-6*tp - 1", "1 - 2*tp", "cos(tp) - 2*tp"},
  };
  e2.w = e2.v = {1, 0, 0, 0, 0};
  e2.depth = 5;
  lib[e2.name] = e2;

  ProblemSpec zero;
  zero.name = "zero";
  zero.matrix.assign(3, std::vector<std::string>(3, "0"));
  zero.w = zero.v = {1, 0, 0};
  zero.depth = 1;
  lib[zero.name] = zero;

  ProblemSpec scalar;
  scalar.name = "scalar";
  scalar.matrix = {{"-0.5"}};
  scalar.w = scalar.v = {1};
  scalar.depth = 1;
  lib[scalar.name] = scalar;

  ProblemSpec scos;
  scos.name = "scalar_cos";
  scos.matrix = {{"cos(tp)"}};
  scos.w = scos.v = {1};
  scos.depth = 1;
  lib[scos.name] = scos;

  ProblemSpec diag2;
  diag2.name = "diag2";
  diag2.matrix = {{"1", "0"}, {"0", "2"}};
  diag2.w = diag2.v = {1, 0};
  diag2.depth = 1;
  lib[diag2.name] = diag2;

  ProblemSpec r8 = random_problem(1, 8, 0.4);
  r8.name = "random8";
  lib[r8.name] = r8;
  return lib;
}

ProblemSpec library_problem(const std::string& name) {
  const auto lib = example_library();
  const auto it = lib.find(name);
  if (it == lib.end()) throw Error(ErrorCode::InvalidProblem, "no library problem named '" + name + "'");
  return it->second;
}

}  // namespace tox
