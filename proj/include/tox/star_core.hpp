#pragma once

#include "tox/grid.hpp"

namespace tox {

// Relative pivot threshold below which a triangular operator counts as singular.
inline constexpr double kDefaultTolSingular = 1e-12;

// Number of worker threads for the blocked products (TOX_THREADS, default 1).
int thread_count();

// Ordinary product of two lower-triangular matrices, skipping the zero blocks.
template <class T>
Mat<T> lower_triangular_product(const Mat<T>& a, const Mat<T>& b);

template <class T>
GridOperator<T> star_product(const GridOperator<T>& f, const GridOperator<T>& g);

template <class T>
GridOperator<T> star_inverse(const GridOperator<T>& f, double tol_singular = kDefaultTolSingular);

template <class T>
GridOperator<T> star_power(const GridOperator<T>& f, int j);

template <class T>
GridOperator<T> star_resolvent(const GridOperator<T>& f, double tol_singular = kDefaultTolSingular);

// Column `col` of theta * f, i.e. the running integral over tau from t_col to t'.
template <class T>
Vec<T> integrate_from(const GridOperator<T>& f, int col);

// Smallest diagonal modulus relative to the largest one (0 for the zero operator).
template <class T>
double relative_min_pivot(const GridOperator<T>& f);

}  // namespace tox
