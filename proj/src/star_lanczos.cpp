#include "tox/star_lanczos.hpp"

#include <cmath>
#include <string>

namespace tox {

const char* status_name(LanczosStatus status) {
  switch (status) {
    case LanczosStatus::Completed: return "completed";
    case LanczosStatus::LuckyBreakdown: return "lucky-breakdown";
    case LanczosStatus::SeriousBreakdown: return "serious-breakdown";
  }
  return "unknown";
}

namespace {

template <class T>
double vector_norm(const StarVector<T>& x) {
  double s = 0.0;
  for (const auto& e : x) s += e.norm() * e.norm();
  return std::sqrt(s);
}

// x - y * c, entrywise on a column.
template <class T>
void subtract_right(StarVector<T>& x, const StarVector<T>& y, const GridOperator<T>& c) {
  if (c.is_zero()) return;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!y[k].is_zero()) x[k] -= star_product(y[k], c);
  }
}

// x - c * y, entrywise on a row.
template <class T>
void subtract_left(StarVector<T>& x, const GridOperator<T>& c, const StarVector<T>& y) {
  if (c.is_zero()) return;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!y[k].is_zero()) x[k] -= star_product(c, y[k]);
  }
}

// Number of leading nodes whose pivot is negligible, or -1 when a
// negligible pivot appears after a regular one.
template <class T>
int degenerate_prefix(const GridOperator<T>& beta, double tol) {
  const auto diag = beta.data().diagonal().cwiseAbs();
  const double top = diag.maxCoeff();
  if (!(top > 0.0)) return static_cast<int>(diag.size());
  int prefix = 0;
  while (prefix < diag.size() && !(diag(prefix) > tol * top)) ++prefix;
  for (Eigen::Index i = prefix; i < diag.size(); ++i) {
    if (!(diag(i) > tol * top) || !std::isfinite(diag(i))) return -1;
  }
  return prefix;
}

struct Attempt {
  enum Kind { Done, Restart } kind = Done;
  int deflate = 0;
};

template <class T>
Attempt run(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int n,
            const LanczosOptions& opt, bool allow_restart, TridiagonalResult<T>& out) {
  const TimeGrid& grid = a.grid();
  const int big_n = a.rows();
  std::vector<StarVector<T>> vs{constant_column<T>(grid, v)};
  std::vector<StarVector<T>> ws{constant_row<T>(grid, w)};
  std::vector<GridOperator<T>> alphas, betas;
  LanczosStatus status = LanczosStatus::Completed;
  int step = 0;
  std::string message;

  for (int k = 0; k < n; ++k) {
    const StarVector<T> wa = star_vecmat(ws[k], a);
    const StarVector<T> av = star_matvec(a, vs[k]);
    const GridOperator<T> alpha = star_dot(wa, vs[k]);
    alphas.push_back(alpha);

    StarVector<T> w_next = wa;
    subtract_left(w_next, alpha, ws[k]);
    StarVector<T> v_hat = av;
    subtract_right(v_hat, vs[k], alpha);
    if (k > 0) {
      subtract_left(w_next, betas.back(), ws[k - 1]);
      for (int r = 0; r < big_n; ++r) v_hat[r] -= vs[k - 1][r];
    }
    if (opt.reorthogonalize) {
      for (int i = 0; i <= k; ++i) {
        subtract_right(v_hat, vs[i], star_dot(ws[i], v_hat));
        subtract_left(w_next, star_dot(w_next, vs[i]), ws[i]);
      }
    }
    // Equal to w_next * av in exact arithmetic; the projected form keeps w_{k+1}^H * v_{k+1} at the identity.
    const GridOperator<T> beta = star_dot(w_next, v_hat);
    betas.push_back(beta);

    const int next = k + 1;
    if (next == big_n) break;  // full tridiagonalization: the next vectors vanish by construction
    const bool v_gone = vector_norm(v_hat) <= opt.tol_lucky * vector_norm(av);
    const bool w_gone = vector_norm(w_next) <= opt.tol_lucky * vector_norm(wa);
    if (v_gone || w_gone) {
      status = LanczosStatus::LuckyBreakdown;
      step = next;
      message = v_gone ? "right Krylov vector vanished" : "left Krylov vector vanished";
      break;
    }
    if (next == n) break;

    const int prefix = degenerate_prefix(beta, opt.tol_singular);
    if (prefix != 0) {
      const int remaining = grid.n_nodes() - prefix;
      if (prefix > 0 && allow_restart && remaining >= opt.min_regular_nodes) {
        return Attempt{Attempt::Restart, prefix};
      }
      status = LanczosStatus::SeriousBreakdown;
      step = next;
      message = "beta_" + std::to_string(next) + " is not star-invertible";
      break;
    }
    StarVector<T> v_next;
    v_next.reserve(big_n);
    const GridOperator<T> beta_inv = star_inverse(beta, opt.tol_singular);
    for (int r = 0; r < big_n; ++r) v_next.push_back(star_product(v_hat[r], beta_inv));
    if (opt.reorthogonalize) {
      for (int i = 0; i <= k; ++i) subtract_right(v_next, vs[i], star_dot(ws[i], v_next));
    }
    vs.push_back(std::move(v_next));
    ws.push_back(std::move(w_next));
  }

  const int depth = static_cast<int>(alphas.size());
  out.depth = depth;
  out.alphas = std::move(alphas);
  out.betas = std::move(betas);
  out.status = status;
  out.breakdown_step = step;
  out.message = message;
  out.V = StarMatrix<T>(grid, big_n, depth);
  out.W = StarMatrix<T>(grid, big_n, depth);
  for (int k = 0; k < depth; ++k) {
    out.V.set_column(k, vs[k]);
    out.W.set_column(k, ws[k]);
  }
  return Attempt{};
}

template <class T>
StarMatrix<T> embed_zero(const StarMatrix<T>& sub, const TimeGrid& full, int k0) {
  StarMatrix<T> out(full, sub.rows(), sub.cols());
  const int m = sub.grid().n_nodes();
  for (int r = 0; r < sub.rows(); ++r) {
    for (int c = 0; c < sub.cols(); ++c) {
      Mat<T> data = Mat<T>::Zero(full.n_nodes(), full.n_nodes());
      data.bottomRightCorner(m, m) = sub(r, c).data();
      out.set(r, c, GridOperator<T>(full, std::move(data)));
    }
  }
  (void)k0;
  return out;
}

}  // namespace

template <class T>
GridOperator<T> extend_to_grid(const GridOperator<T>& sub, const TimeGrid& full, int k0) {
  const int n = full.n_nodes();
  const int m = sub.grid().n_nodes();
  if (m + k0 != n) throw Error(ErrorCode::GridMismatch, "sub-grid does not match the full grid");
  Mat<T> y = Mat<T>::Zero(n, n);
  y.bottomRightCorner(m, m) = sub.data();
  for (int j = k0 - 1; j >= 0; --j) {
    for (int i = j; i < n; ++i) {
      if (i + 3 < n) {
        y(i, j) = T(3) * y(i + 1, j + 1) - T(3) * y(i + 2, j + 2) + y(i + 3, j + 3);
      } else if (i >= j + 3) {
        y(i, j) = T(3) * y(i, j + 1) - T(3) * y(i, j + 2) + y(i, j + 3);
      } else if (i + 1 < n) {
        y(i, j) = y(i + 1, j + 1);
      }
    }
  }
  return GridOperator<T>(full, std::move(y));
}

template <class T>
TridiagonalResult<T> star_lanczos(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int n,
                                  const LanczosOptions& options) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  if (w.size() != a.rows() || v.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from matrix size");
  }
  if (!w.allFinite() || !v.allFinite()) {
    throw Error(ErrorCode::NormalizationViolation, "vectors must have finite entries");
  }
  const T wv = w.dot(v);
  if (std::abs(wv - T(1)) > 1e-12) {
    throw Error(ErrorCode::NormalizationViolation, "w^H v must equal 1");
  }
  if (n < 1 || n > a.rows()) {
    throw Error(ErrorCode::DepthExceedsDimension,
                "depth " + std::to_string(n) + " outside 1.." + std::to_string(a.rows()));
  }

  const TimeGrid& full = a.grid();
  TridiagonalResult<T> out{.V = StarMatrix<T>(full, a.rows(), 1), .W = StarMatrix<T>(full, a.rows(), 1)};
  int k0 = 0;
  for (;;) {
    const StarMatrix<T> sub = k0 == 0 ? a : a.trailing(k0);
    const Attempt attempt = run(sub, w, v, n, options, options.deflate_boundary, out);
    if (attempt.kind == Attempt::Done) break;
    k0 += attempt.deflate;
  }
  out.first_regular_node = k0;
  if (k0 > 0) {
    for (auto& x : out.alphas) x = extend_to_grid(x, full, k0);
    for (auto& x : out.betas) x = extend_to_grid(x, full, k0);
    out.V = embed_zero(out.V, full, k0);
    out.W = embed_zero(out.W, full, k0);
  }
  return out;
}

template <class T>
StarMatrix<T> tridiagonal_matrix(const TridiagonalResult<T>& result) {
  const int n = result.depth;
  const TimeGrid& grid = result.grid();
  StarMatrix<T> t(grid, n, n);
  const auto delta = delta_operator<T>(grid, 0);
  for (int k = 0; k < n; ++k) {
    t.set(k, k, result.alphas[k]);
    if (k + 1 < n) {
      t.set(k + 1, k, result.betas[k]);
      t.set(k, k + 1, delta);
    }
  }
  return t;
}

template <class T>
double relative_deviation(const GridOperator<T>& x, const GridOperator<T>& y, int first_node) {
  const GridOperator<T> xs = first_node > 0 ? x.trailing(first_node) : x;
  const GridOperator<T> ys = first_node > 0 ? y.trailing(first_node) : y;
  const double diff = (xs.data() - ys.data()).norm();
  const double ref = ys.data().norm();
  return ref > 0.0 ? diff / ref : diff;
}

template <class T>
double check_biorthogonality(const TridiagonalResult<T>& result) {
  const int k0 = result.first_regular_node;
  const StarMatrix<T> v = k0 > 0 ? result.V.trailing(k0) : result.V;
  const StarMatrix<T> w = k0 > 0 ? result.W.trailing(k0) : result.W;
  const auto delta = delta_operator<T>(v.grid(), 0);
  const double unit = delta.norm();
  double worst = 0.0;
  for (int i = 0; i < result.depth; ++i) {
    const StarVector<T> wi = w.column(i);
    for (int j = 0; j < result.depth; ++j) {
      GridOperator<T> g = star_dot(wi, v.column(j));
      if (i == j) g -= delta;
      worst = std::max(worst, g.norm() / unit);
    }
  }
  return worst;
}

template <class T>
GridOperator<T> tridiagonal_moment(const TridiagonalResult<T>& result, int j) {
  const StarMatrix<T> t = tridiagonal_matrix(result);
  Vec<T> e1 = Vec<T>::Zero(result.depth);
  e1(0) = T(1);
  return bilinear_moment(t, e1, e1, j);
}

#define TOX_INSTANTIATE(T)                                                                        \
  template struct TridiagonalResult<T>;                                                           \
  template TridiagonalResult<T> star_lanczos<T>(const StarMatrix<T>&, const Vec<T>&, const Vec<T>&, int, \
                                                const LanczosOptions&);                           \
  template StarMatrix<T> tridiagonal_matrix<T>(const TridiagonalResult<T>&);                      \
  template double check_biorthogonality<T>(const TridiagonalResult<T>&);                          \
  template double relative_deviation<T>(const GridOperator<T>&, const GridOperator<T>&, int);     \
  template GridOperator<T> tridiagonal_moment<T>(const TridiagonalResult<T>&, int);               \
  template GridOperator<T> extend_to_grid<T>(const GridOperator<T>&, const TimeGrid&, int);

TOX_INSTANTIATE(double)
TOX_INSTANTIATE(Complex)

}  // namespace tox
