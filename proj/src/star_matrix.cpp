#include "tox/star_matrix.hpp"

#include <cmath>
#include <string>

namespace tox {

namespace {

void require_dims(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace

template <class T>
StarMatrix<T>::StarMatrix(const TimeGrid& grid, int rows, int cols)
    : grid_(grid), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidSize, "matrix dimensions must be positive");
  entries_.assign(static_cast<std::size_t>(rows) * cols, GridOperator<T>::zero(grid));
}

template <class T>
StarMatrix<T> StarMatrix<T>::identity(const TimeGrid& grid, int n) {
  StarMatrix out(grid, n, n);
  const auto delta = delta_operator<T>(grid, 0);
  for (int k = 0; k < n; ++k) out.set(k, k, delta);
  return out;
}

template <class T>
int StarMatrix<T>::index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw Error(ErrorCode::IndexOutOfRange, "matrix entry out of range");
  }
  return r * cols_ + c;
}

template <class T>
void StarMatrix<T>::set(int r, int c, GridOperator<T> value) {
  require_same_grid(grid_, value.grid());
  entries_[index(r, c)] = std::move(value);
}

template <class T>
StarVector<T> StarMatrix<T>::column(int c) const {
  StarVector<T> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

template <class T>
void StarMatrix<T>::set_column(int c, const StarVector<T>& values) {
  require_dims(static_cast<int>(values.size()) == rows_, "column length mismatch");
  for (int r = 0; r < rows_; ++r) set(r, c, values[r]);
}

template <class T>
StarMatrix<T> StarMatrix<T>::trailing(int first) const {
  StarMatrix out(grid_.trailing(first), rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].trailing(first);
  return out;
}

template <class T>
double StarMatrix<T>::norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.norm() * e.norm();
  return std::sqrt(s);
}

template <class T>
StarMatrix<T>& StarMatrix<T>::operator+=(const StarMatrix& other) {
  require_dims(rows_ == other.rows_ && cols_ == other.cols_, "matrix sum dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

template <class T>
StarMatrix<T>& StarMatrix<T>::operator-=(const StarMatrix& other) {
  require_dims(rows_ == other.rows_ && cols_ == other.cols_, "matrix difference dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

template <class T>
StarMatrix<T> assemble(const TimeGrid& grid, const BivariateTable& fns) {
  require_dims(!fns.empty() && !fns.front().empty(), "empty function table");
  const int rows = static_cast<int>(fns.size());
  const int cols = static_cast<int>(fns.front().size());
  StarMatrix<T> out(grid, rows, cols);
  for (int r = 0; r < rows; ++r) {
    require_dims(static_cast<int>(fns[r].size()) == cols, "function table is not rectangular");
    for (int c = 0; c < cols; ++c) out.set(r, c, sample_smooth<T>(grid, fns[r][c]));
  }
  return out;
}

template <class T>
StarMatrix<T> star_matmul(const StarMatrix<T>& a, const StarMatrix<T>& b) {
  require_dims(a.cols() == b.rows(), "inner dimensions differ");
  require_same_grid(a.grid(), b.grid());
  StarMatrix<T> out(a.grid(), a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < b.cols(); ++c) {
      auto acc = GridOperator<T>::zero(a.grid());
      for (int k = 0; k < a.cols(); ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        acc += star_product(a(r, k), b(k, c));
      }
      out.set(r, c, std::move(acc));
    }
  }
  return out;
}

template <class T>
StarVector<T> star_matvec(const StarMatrix<T>& a, const StarVector<T>& x) {
  require_dims(static_cast<int>(x.size()) == a.cols(), "vector length differs from matrix columns");
  StarVector<T> out;
  out.reserve(a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    auto acc = GridOperator<T>::zero(a.grid());
    for (int k = 0; k < a.cols(); ++k) {
      if (a(r, k).is_zero() || x[k].is_zero()) continue;
      acc += star_product(a(r, k), x[k]);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <class T>
StarVector<T> star_vecmat(const StarVector<T>& y, const StarMatrix<T>& a) {
  require_dims(static_cast<int>(y.size()) == a.rows(), "vector length differs from matrix rows");
  StarVector<T> out;
  out.reserve(a.cols());
  for (int c = 0; c < a.cols(); ++c) {
    auto acc = GridOperator<T>::zero(a.grid());
    for (int k = 0; k < a.rows(); ++k) {
      if (a(k, c).is_zero() || y[k].is_zero()) continue;
      acc += star_product(y[k], a(k, c));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <class T>
GridOperator<T> star_dot(const StarVector<T>& y, const StarVector<T>& x) {
  require_dims(!x.empty() && y.size() == x.size(), "vector lengths differ");
  auto acc = GridOperator<T>::zero(x.front().grid());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (y[k].is_zero() || x[k].is_zero()) continue;
    acc += star_product(y[k], x[k]);
  }
  return acc;
}

template <class T>
StarVector<T> constant_column(const TimeGrid& grid, const Vec<T>& v) {
  const auto delta = delta_operator<T>(grid, 0);
  StarVector<T> out;
  out.reserve(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k) * delta);
  return out;
}

template <class T>
StarVector<T> constant_row(const TimeGrid& grid, const Vec<T>& w) {
  const Vec<T> conj = w.conjugate();
  return constant_column<T>(grid, conj);
}

template <class T>
GridOperator<T> bilinear_moment(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int j) {
  require_dims(a.rows() == a.cols(), "moment needs a square matrix");
  require_dims(w.size() == a.rows() && v.size() == a.cols(), "vector length differs from matrix");
  if (j < 0) throw Error(ErrorCode::UnsupportedOrder, "negative moment order");
  const TimeGrid& grid = a.grid();
  if (j == 0) return w.dot(v) * delta_operator<T>(grid, 0);

  // First application is an ordinary linear combination: A * (v delta_0) = A v.
  StarVector<T> y;
  y.reserve(a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    auto acc = GridOperator<T>::zero(grid);
    for (int c = 0; c < a.cols(); ++c) {
      if (v(c) != T(0) && !a(r, c).is_zero()) acc += v(c) * a(r, c);
    }
    y.push_back(std::move(acc));
  }
  for (int step = 1; step < j; ++step) y = star_matvec(a, y);

  auto out = GridOperator<T>::zero(grid);
  for (int r = 0; r < a.rows(); ++r) {
    const T coef = Eigen::numext::conj(w(r));
    if (coef != T(0) && !y[r].is_zero()) out += coef * y[r];
  }
  return out;
}

template <class T>
GridOperator<T> contract(const StarMatrix<T>& x, const Vec<T>& w, const Vec<T>& v) {
  require_dims(w.size() == x.rows() && v.size() == x.cols(), "vector length differs from matrix");
  auto out = GridOperator<T>::zero(x.grid());
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) {
      const T coef = Eigen::numext::conj(w(r)) * v(c);
      if (coef != T(0) && !x(r, c).is_zero()) out += coef * x(r, c);
    }
  }
  return out;
}

template <class T>
StarMatrix<T> star_matrix_inverse(const StarMatrix<T>& a) {
  require_dims(a.rows() == a.cols(), "inverse needs a square matrix");
  const int n = a.rows();
  const int nt = a.grid().n_nodes();
  Mat<T> big = Mat<T>::Zero(static_cast<Eigen::Index>(n) * nt, static_cast<Eigen::Index>(n) * nt);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) big.block(r * nt, c * nt, nt, nt) = a(r, c).data();
  }
  Eigen::PartialPivLU<Mat<T>> lu(big);
  const double pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double top = lu.matrixLU().diagonal().cwiseAbs().maxCoeff();
  if (!(pivot > kDefaultTolSingular * top)) {
    throw Error(ErrorCode::BreakdownSingular, "block operator is not invertible");
  }
  const double dt = a.grid().dt();
  Mat<T> inv = lu.inverse() / (dt * dt);
  StarMatrix<T> out(a.grid(), n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out.set(r, c, GridOperator<T>(a.grid(), inv.block(r * nt, c * nt, nt, nt)));
    }
  }
  return out;
}

template <class T>
StarMatrix<T> star_matrix_resolvent(const StarMatrix<T>& a) {
  return star_matrix_inverse(StarMatrix<T>::identity(a.grid(), a.rows()) - a);
}

template <class T>
double diagonal_inf_norm(const StarMatrix<T>& a) {
  const int nt = a.grid().n_nodes();
  double best = 0.0;
  for (int i = 0; i < nt; ++i) {
    for (int r = 0; r < a.rows(); ++r) {
      double row = 0.0;
      for (int c = 0; c < a.cols(); ++c) row += std::abs(a(r, c)(i, i));
      best = std::max(best, row);
    }
  }
  return best;
}

#define TOX_INSTANTIATE(T)                                                                      \
  template class StarMatrix<T>;                                                                 \
  template StarMatrix<T> assemble<T>(const TimeGrid&, const BivariateTable&);                   \
  template StarMatrix<T> star_matmul<T>(const StarMatrix<T>&, const StarMatrix<T>&);            \
  template StarVector<T> star_matvec<T>(const StarMatrix<T>&, const StarVector<T>&);            \
  template StarVector<T> star_vecmat<T>(const StarVector<T>&, const StarMatrix<T>&);            \
  template GridOperator<T> star_dot<T>(const StarVector<T>&, const StarVector<T>&);             \
  template StarVector<T> constant_column<T>(const TimeGrid&, const Vec<T>&);                    \
  template StarVector<T> constant_row<T>(const TimeGrid&, const Vec<T>&);                       \
  template GridOperator<T> bilinear_moment<T>(const StarMatrix<T>&, const Vec<T>&, const Vec<T>&, int); \
  template GridOperator<T> contract<T>(const StarMatrix<T>&, const Vec<T>&, const Vec<T>&);     \
  template StarMatrix<T> star_matrix_inverse<T>(const StarMatrix<T>&);                          \
  template StarMatrix<T> star_matrix_resolvent<T>(const StarMatrix<T>&);                        \
  template double diagonal_inf_norm<T>(const StarMatrix<T>&);

TOX_INSTANTIATE(double)
TOX_INSTANTIATE(Complex)

}  // namespace tox
