#pragma once

#include <cmath>
#include <random>

#include "tox/grid.hpp"
#include "tox/star_matrix.hpp"

namespace tox::test {

// Plain triple loop, independent of the blocked kernel.
template <class T>
Mat<T> naive_product(const Mat<T>& a, const Mat<T>& b) {
  const int n = static_cast<int>(a.rows());
  Mat<T> c = Mat<T>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// Lower-triangular operator with entries in [-1, 1] and diagonal bounded away from 0.
inline GridOperator<double> random_operator(const TimeGrid& g, std::mt19937_64& rng,
                                            double diag_shift = 0.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = g.n_nodes();
  Mat<double> m = Mat<double>::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) m(i, j) = u(rng);
  for (int i = 0; i < n; ++i) m(i, i) += diag_shift;
  return GridOperator<double>(g, m);
}

inline StarMatrix<double> random_star_matrix(const TimeGrid& g, int n, std::mt19937_64& rng) {
  StarMatrix<double> out(g, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.set(r, c, random_operator(g, rng));
  return out;
}

inline double rel(const Mat<double>& x, const Mat<double>& y) {
  const double ref = y.norm();
  return ref > 0 ? (x - y).norm() / ref : (x - y).norm();
}

// Largest |op(i, j) - f(t_i, t_j)| over i >= j, j >= first.
template <class F>
double pointwise_error(const GridOperator<double>& op, F f, int first = 0) {
  const TimeGrid& g = op.grid();
  double worst = 0.0;
  for (int j = first; j < g.n_nodes(); ++j)
    for (int i = j; i < g.n_nodes(); ++i)
      worst = std::max(worst, std::abs(op(i, j) - f(g.node(i), g.node(j))));
  return worst;
}

template <class F>
double pointwise_scale(const TimeGrid& g, F f) {
  double worst = 1.0;
  for (int j = 0; j < g.n_nodes(); ++j)
    for (int i = j; i < g.n_nodes(); ++i) worst = std::max(worst, std::abs(f(g.node(i), g.node(j))));
  return worst;
}

// Closed forms of the example2 recurrence coefficients, as functions of (t', t).
namespace ex2 {
inline double alpha0(double tp, double) { return std::cos(tp); }
inline double alpha1(double, double t) { return std::cos(t); }
inline double alpha2(double tp, double t) { return (tp - t) * std::sin(t) + std::cos(t); }
inline double alpha3(double tp, double t) {
  const double d = t - tp;
  return 0.5 * (4.0 * (tp - t) * std::sin(t) - (d * d - 2.0) * std::cos(t));
}
inline double alpha4(double tp, double t) {
  const double d = t - tp;
  return ((d * d - 18.0) * d * std::sin(t) + (6.0 - 9.0 * d * d) * std::cos(t)) / 6.0;
}
inline double beta1(double tp, double t) { return 0.5 * (tp * tp - t * t); }
inline double beta2(double tp, double t) { return t * (tp - t); }
inline double beta3(double tp, double t) { return -0.5 * (3 * t * t - 4 * t * tp + tp * tp); }
inline double beta4(double tp, double t) { return -2 * t * t + 3 * t * tp - tp * tp; }
}  // namespace ex2

}  // namespace tox::test
