#pragma once

#include "tox/star_lanczos.hpp"

namespace tox {

// (Id - T_n)^{*-1}_{11} by the finite chain continued fraction.
template <class T>
GridOperator<T> pathsum_resolvent_11(const TridiagonalResult<T>& result,
                                     double tol_singular = kDefaultTolSingular);

// Integrated resolvent entry at column t_start: the depth-n approximant of w^H U(t', t_start) v.
template <class T>
Vec<T> approximant(const TridiagonalResult<T>& result, double tol_singular = kDefaultTolSingular);

template <class T>
Vec<T> approx_u(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int n,
                const LanczosOptions& options = {});

// w^H U(t', t_start) v from the resolvent of the whole matrix A.
template <class T>
Vec<T> direct_u(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v);

struct BoundTerms {
  double c = 0.0;    // sup ||A~(t')||_inf over the grid nodes
  double d_n = 0.0;  // 3 * max |alpha_k|, |beta_k| over regular grid entries, k <= n-1
  int n = 0;
};

template <class T>
BoundTerms bound_terms(const StarMatrix<T>& a, const TridiagonalResult<T>& result);

// (C^{2n} + D^{2n}) / (2n)! * tau^{2n} * exp((C + D) tau), evaluated in logs.
double error_bound_value(const BoundTerms& terms, double tau);

template <class T>
double error_bound(const StarMatrix<T>& a, const TridiagonalResult<T>& result, double t_prime, double t);

}  // namespace tox
