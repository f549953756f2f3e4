#pragma once

#include <vector>

#include "tox/star_core.hpp"

namespace tox {

// A column (or a row) of distributions.
template <class T>
using StarVector = std::vector<GridOperator<T>>;

template <class T>
class StarMatrix {
 public:
  StarMatrix(const TimeGrid& grid, int rows, int cols);  // all-zero entries

  static StarMatrix identity(const TimeGrid& grid, int n);

  const TimeGrid& grid() const { return grid_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const GridOperator<T>& operator()(int r, int c) const { return entries_[index(r, c)]; }
  void set(int r, int c, GridOperator<T> value);

  StarVector<T> column(int c) const;
  void set_column(int c, const StarVector<T>& values);

  StarMatrix trailing(int first) const;
  double norm() const;

  StarMatrix& operator+=(const StarMatrix& other);
  StarMatrix& operator-=(const StarMatrix& other);
  friend StarMatrix operator+(StarMatrix a, const StarMatrix& b) { return a += b; }
  friend StarMatrix operator-(StarMatrix a, const StarMatrix& b) { return a -= b; }

 private:
  int index(int r, int c) const;

  TimeGrid grid_;
  int rows_;
  int cols_;
  std::vector<GridOperator<T>> entries_;
};

using BivariateTable = std::vector<std::vector<BivariateFn>>;

template <class T>
StarMatrix<T> assemble(const TimeGrid& grid, const BivariateTable& fns);

template <class T>
StarMatrix<T> star_matmul(const StarMatrix<T>& a, const StarMatrix<T>& b);

// A * x for a column x of distributions.
template <class T>
StarVector<T> star_matvec(const StarMatrix<T>& a, const StarVector<T>& x);

// y * A for a row y of distributions.
template <class T>
StarVector<T> star_vecmat(const StarVector<T>& y, const StarMatrix<T>& a);

// Row times column: sum_k y_k * x_k.
template <class T>
GridOperator<T> star_dot(const StarVector<T>& y, const StarVector<T>& x);

// Constant vector embedded as v * delta_0 (a column).
template <class T>
StarVector<T> constant_column(const TimeGrid& grid, const Vec<T>& v);

// Row w^H * delta_0 (entries already conjugated).
template <class T>
StarVector<T> constant_row(const TimeGrid& grid, const Vec<T>& w);

// w^H (A^{*j}) v by repeated matrix-vector products.
template <class T>
GridOperator<T> bilinear_moment(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int j);

// w^H X v for an arbitrary matrix of distributions.
template <class T>
GridOperator<T> contract(const StarMatrix<T>& x, const Vec<T>& w, const Vec<T>& v);

// Star inverse of a square matrix of distributions, solved as one block
// system of size (n * n_nodes) with partial-pivoting LU.
template <class T>
StarMatrix<T> star_matrix_inverse(const StarMatrix<T>& a);

// (Id - A)^{*-1}.
template <class T>
StarMatrix<T> star_matrix_resolvent(const StarMatrix<T>& a);

// Largest time-local infinity norm max_i ||A(t_i, t_i)||_inf, used as the sup of ||A~(t')||.
template <class T>
double diagonal_inf_norm(const StarMatrix<T>& a);

}  // namespace tox
