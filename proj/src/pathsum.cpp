#include "tox/pathsum.hpp"

#include <cmath>
#include <limits>

namespace tox {

template <class T>
GridOperator<T> pathsum_resolvent_11(const TridiagonalResult<T>& result, double tol_singular) {
  if (result.depth < 1) throw Error(ErrorCode::InvalidSize, "empty tridiagonal result");
  if (result.status == LanczosStatus::SeriousBreakdown) {
    throw Error(ErrorCode::BreakdownSingular, "cannot evaluate a seriously broken-down recurrence");
  }
  const TimeGrid& grid = result.grid();
  const auto delta = delta_operator<T>(grid, 0);
  const int n = result.depth;
  GridOperator<T> r = star_inverse(delta - result.alphas[n - 1], tol_singular);
  for (int k = n - 2; k >= 0; --k) {
    r = star_inverse(delta - result.alphas[k] - star_product(r, result.betas[k]), tol_singular);
  }
  return r;
}

template <class T>
Vec<T> approximant(const TridiagonalResult<T>& result, double tol_singular) {
  return integrate_from(pathsum_resolvent_11(result, tol_singular), 0);
}

template <class T>
Vec<T> approx_u(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int n,
                const LanczosOptions& options) {
  return approximant(star_lanczos(a, w, v, n, options), options.tol_singular);
}

template <class T>
Vec<T> direct_u(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v) {
  const StarMatrix<T> r = star_matrix_resolvent(a);
  return integrate_from(contract(r, w, v), 0);
}

template <class T>
BoundTerms bound_terms(const StarMatrix<T>& a, const TridiagonalResult<T>& result) {
  BoundTerms terms;
  terms.n = result.depth;
  terms.c = diagonal_inf_norm(a);
  const int k0 = result.first_regular_node;
  double m = 0.0;
  auto scan = [&](const GridOperator<T>& x) {
    const int nt = x.size();
    for (int j = k0; j < nt; ++j) {
      for (int i = j; i < nt; ++i) m = std::max(m, std::abs(x(i, j)));
    }
  };
  for (int k = 0; k < result.depth; ++k) scan(result.alphas[k]);
  for (int k = 1; k < result.depth; ++k) scan(result.betas[k - 1]);
  terms.d_n = 3.0 * m;
  return terms;
}

double error_bound_value(const BoundTerms& terms, double tau) {
  if (tau <= 0.0) return 0.0;
  const double two_n = 2.0 * terms.n;
  const double lc = terms.c > 0.0 ? two_n * std::log(terms.c) : -std::numeric_limits<double>::infinity();
  const double ld = terms.d_n > 0.0 ? two_n * std::log(terms.d_n) : -std::numeric_limits<double>::infinity();
  const double hi = std::max(lc, ld);
  if (hi == -std::numeric_limits<double>::infinity()) return 0.0;
  const double log_sum = hi + std::log1p(std::exp(std::min(lc, ld) - hi));
  const double log_bound =
      log_sum - std::lgamma(two_n + 1.0) + two_n * std::log(tau) + (terms.c + terms.d_n) * tau;
  if (log_bound > std::log(std::numeric_limits<double>::max())) {
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(log_bound);
}

template <class T>
double error_bound(const StarMatrix<T>& a, const TridiagonalResult<T>& result, double t_prime, double t) {
  return error_bound_value(bound_terms(a, result), t_prime - t);
}

#define TOX_INSTANTIATE(T)                                                                         \
  template GridOperator<T> pathsum_resolvent_11<T>(const TridiagonalResult<T>&, double);           \
  template Vec<T> approximant<T>(const TridiagonalResult<T>&, double);                             \
  template Vec<T> approx_u<T>(const StarMatrix<T>&, const Vec<T>&, const Vec<T>&, int,             \
                              const LanczosOptions&);                                              \
  template Vec<T> direct_u<T>(const StarMatrix<T>&, const Vec<T>&, const Vec<T>&);                 \
  template BoundTerms bound_terms<T>(const StarMatrix<T>&, const TridiagonalResult<T>&);           \
  template double error_bound<T>(const StarMatrix<T>&, const TridiagonalResult<T>&, double, double);

TOX_INSTANTIATE(double)
TOX_INSTANTIATE(Complex)

}  // namespace tox
