#pragma once

#include <string>
#include <vector>

#include "tox/star_matrix.hpp"

namespace tox {

enum class LanczosStatus { Completed, LuckyBreakdown, SeriousBreakdown };

const char* status_name(LanczosStatus status);

struct LanczosOptions {
  double tol_singular = kDefaultTolSingular;
  // A new Krylov vector counts as vanished when its norm falls below
  // tol_lucky times the norm of the product it was computed from.
  double tol_lucky = 1e-10;
  // One two-sided projection pass against all previous basis vectors.
  bool reorthogonalize = true;
  // Degenerate pivots on a leading run of grid nodes are split off and the
  // iteration is restarted on the trailing grid.
  bool deflate_boundary = true;
  // Fewest nodes that must remain after deflation.
  int min_regular_nodes = 8;
};

template <class T>
struct TridiagonalResult {
  int depth = 0;
  std::vector<GridOperator<T>> alphas{};// alpha_0 .. alpha_{depth-1}
  std::vector<GridOperator<T>> betas{}; // beta_1 .. beta_{depth-1}, plus beta_depth when computed
  StarMatrix<T> V;                      // N x depth, columns v_k
  StarMatrix<T> W;                      // N x depth, column k holds the entries of w_k^H
  LanczosStatus status = LanczosStatus::Completed;
  int breakdown_step = 0;
  // Nodes 0 .. first_regular_node-1 were split off as degenerate; the
  // coefficients there are extrapolated and excluded from tolerances.
  int first_regular_node = 0;
  std::string message{};

  const TimeGrid& grid() const { return V.grid(); }
};

template <class T>
TridiagonalResult<T> star_lanczos(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int n,
                                  const LanczosOptions& options = {});

// n x n matrix with alphas on the diagonal, betas below and delta_0 above.
template <class T>
StarMatrix<T> tridiagonal_matrix(const TridiagonalResult<T>& result);

// max_{i,j} ||w_i^H * v_j - delta_ij delta_0|| / ||delta_0|| on the regular nodes.
template <class T>
double check_biorthogonality(const TridiagonalResult<T>& result);

// Relative Frobenius distance on the regular block: ||x - y|| / ||y||
// (absolute when y vanishes).
template <class T>
double relative_deviation(const GridOperator<T>& x, const GridOperator<T>& y, int first_node = 0);

// e_1^H (T^{*j}) e_1 for the tridiagonal matrix of `result`.
template <class T>
GridOperator<T> tridiagonal_moment(const TridiagonalResult<T>& result, int j);

// Extend an operator known on nodes k0.. to the full grid by quadratic
// extrapolation along diagonals (along rows near the last node).
template <class T>
GridOperator<T> extend_to_grid(const GridOperator<T>& sub, const TimeGrid& full, int k0);

}  // namespace tox
