#include "tox/star_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#ifdef TOX_HAVE_OPENMP
#include <omp.h>
#endif

namespace tox {

namespace {

constexpr int kBlock = 96;

}  // namespace

int thread_count() {
  static const int count = [] {
    const char* env = std::getenv("TOX_THREADS");
    if (env == nullptr) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
  }();
  return count;
}

template <class T>
Mat<T> lower_triangular_product(const Mat<T>& a, const Mat<T>& b) {
  const int n = static_cast<int>(a.rows());
  Mat<T> c = Mat<T>::Zero(n, n);
  const int nb = (n + kBlock - 1) / kBlock;
  auto start = [n](int b) { return b * kBlock; };
  auto len = [n](int b) { return std::min(kBlock, n - b * kBlock); };

  // Each output block (I, J) is owned by one thread and summed over K in a
  // fixed order, so results do not depend on scheduling.
#ifdef TOX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
#endif
  for (int bi = nb - 1; bi >= 0; --bi) {
    for (int bj = 0; bj <= bi; ++bj) {
      auto out = c.block(start(bi), start(bj), len(bi), len(bj));
      for (int bk = bj; bk <= bi; ++bk) {
        out.noalias() += a.block(start(bi), start(bk), len(bi), len(bk)) *
                         b.block(start(bk), start(bj), len(bk), len(bj));
      }
    }
  }
  return c;
}

template <class T>
GridOperator<T> star_product(const GridOperator<T>& f, const GridOperator<T>& g) {
  require_same_grid(f.grid(), g.grid());
  if (f.is_zero() || g.is_zero()) return GridOperator<T>::zero(f.grid());
  Mat<T> c = lower_triangular_product<T>(f.data(), g.data());
  c *= f.grid().dt();
  return GridOperator<T>(f.grid(), std::move(c));
}

template <class T>
double relative_min_pivot(const GridOperator<T>& f) {
  const auto diag = f.data().diagonal().cwiseAbs();
  const double top = diag.maxCoeff();
  if (!(top > 0.0)) return 0.0;
  return diag.minCoeff() / top;
}

template <class T>
GridOperator<T> star_inverse(const GridOperator<T>& f, double tol_singular) {
  const auto diag = f.data().diagonal().cwiseAbs();
  const double top = diag.maxCoeff();
  for (int i = 0; i < diag.size(); ++i) {
    if (!(diag(i) > tol_singular * top) || !std::isfinite(diag(i))) {
      throw Error(ErrorCode::BreakdownSingular,
                  "operator is not invertible: diagonal entry " + std::to_string(i) +
                      " is negligible");
    }
  }
  const int n = f.size();
  Mat<T> inv = Mat<T>::Identity(n, n);
  f.data().template triangularView<Eigen::Lower>().solveInPlace(inv);
  const double dt = f.grid().dt();
  inv /= dt * dt;
  return GridOperator<T>(f.grid(), std::move(inv));
}

template <class T>
GridOperator<T> star_power(const GridOperator<T>& f, int j) {
  if (j < 0) throw Error(ErrorCode::UnsupportedOrder, "negative star power");
  GridOperator<T> result = delta_operator<T>(f.grid(), 0);
  if (j == 0) return result;
  result = f;
  for (int k = 1; k < j; ++k) result = star_product(result, f);
  return result;
}

template <class T>
GridOperator<T> star_resolvent(const GridOperator<T>& f, double tol_singular) {
  return star_inverse(delta_operator<T>(f.grid(), 0) - f, tol_singular);
}

template <class T>
Vec<T> integrate_from(const GridOperator<T>& f, int col) {
  const int n = f.size();
  if (col < 0 || col >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "column " + std::to_string(col) + " is outside the grid");
  }
  // Theta * f column: cumulative sum of f(:, col) from row col downwards, times dt.
  Vec<T> out = Vec<T>::Zero(n);
  T acc = T(0);
  const double dt = f.grid().dt();
  for (int i = col; i < n; ++i) {
    acc += f(i, col);
    out(i) = acc * dt;
  }
  return out;
}

#define TOX_INSTANTIATE(T)                                                              \
  template Mat<T> lower_triangular_product<T>(const Mat<T>&, const Mat<T>&);            \
  template GridOperator<T> star_product<T>(const GridOperator<T>&, const GridOperator<T>&); \
  template GridOperator<T> star_inverse<T>(const GridOperator<T>&, double);             \
  template GridOperator<T> star_power<T>(const GridOperator<T>&, int);                  \
  template GridOperator<T> star_resolvent<T>(const GridOperator<T>&, double);           \
  template Vec<T> integrate_from<T>(const GridOperator<T>&, int);                       \
  template double relative_min_pivot<T>(const GridOperator<T>&);

TOX_INSTANTIATE(double)
TOX_INSTANTIATE(Complex)

}  // namespace tox
