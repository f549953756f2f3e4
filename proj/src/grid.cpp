#include "tox/grid.hpp"

#include <cmath>
#include <string>

namespace tox {

TimeGrid::TimeGrid(double t_start, double t_end, int n_nodes)
    : t_start_(t_start), t_end_(t_end), n_nodes_(n_nodes), dt_(0.0) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw Error(ErrorCode::InvalidInterval, "interval requires t_end > t_start");
  }
  if (n_nodes < 2) {
    throw Error(ErrorCode::InvalidSize, "grid needs at least 2 nodes, got " + std::to_string(n_nodes));
  }
  dt_ = (t_end - t_start) / (n_nodes - 1);
}

TimeGrid::TimeGrid(double t_start, double dt, int n_nodes, bool)
    : t_start_(t_start), t_end_(t_start + (n_nodes - 1) * dt), n_nodes_(n_nodes), dt_(dt) {}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(n_nodes_);
  for (int i = 0; i < n_nodes_; ++i) out[i] = node(i);
  return out;
}

TimeGrid TimeGrid::trailing(int first) const {
  if (first < 0 || first > n_nodes_ - 1) {
    throw Error(ErrorCode::IndexOutOfRange, "trailing grid start out of range");
  }
  return TimeGrid(node(first), dt_, n_nodes_ - first, true);
}

TimeGrid make_grid(double t_start, double t_end, int n_nodes) {
  return TimeGrid(t_start, t_end, n_nodes);
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b) {
  if (a != b) throw Error(ErrorCode::GridMismatch, "operands live on different time grids");
}

template <class T>
GridOperator<T>::GridOperator(const TimeGrid& grid, Mat<T> data) : grid_(grid), data_(std::move(data)) {
  const int n = grid.n_nodes();
  if (data_.rows() != n || data_.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "operator data does not match grid size");
  }
  data_.template triangularView<Eigen::StrictlyUpper>().setZero();
  refresh_zero();
}

template <class T>
GridOperator<T> GridOperator<T>::zero(const TimeGrid& grid) {
  const int n = grid.n_nodes();
  return GridOperator(grid, Mat<T>::Zero(n, n), true);
}

template <class T>
GridOperator<T> GridOperator<T>::trailing(int first) const {
  TimeGrid sub = grid_.trailing(first);
  const int m = sub.n_nodes();
  return GridOperator(sub, data_.bottomRightCorner(m, m), zero_);
}

template <class T>
GridOperator<T> GridOperator<T>::conjugate() const {
  return GridOperator(grid_, data_.conjugate(), zero_);
}

template <class T>
GridOperator<T> GridOperator<T>::operator-() const {
  return GridOperator(grid_, -data_, zero_);
}

template <class T>
GridOperator<T>& GridOperator<T>::operator+=(const GridOperator& other) {
  require_same_grid(grid_, other.grid_);
  if (other.zero_) return *this;
  if (zero_) {
    data_ = other.data_;
    zero_ = false;
    return *this;
  }
  data_ += other.data_;
  refresh_zero();
  return *this;
}

template <class T>
GridOperator<T>& GridOperator<T>::operator-=(const GridOperator& other) {
  require_same_grid(grid_, other.grid_);
  if (other.zero_) return *this;
  data_ -= other.data_;
  refresh_zero();
  return *this;
}

template <class T>
GridOperator<T>& GridOperator<T>::operator*=(T scale) {
  if (zero_) return *this;
  data_ *= scale;
  refresh_zero();
  return *this;
}

template <class T>
GridOperator<T> theta_operator(const TimeGrid& grid) {
  const int n = grid.n_nodes();
  Mat<T> m = Mat<T>::Zero(n, n);
  m.template triangularView<Eigen::Lower>().setOnes();
  return GridOperator<T>(grid, std::move(m));
}

template <class T>
GridOperator<T> delta_operator(const TimeGrid& grid, int k) {
  const int n = grid.n_nodes();
  if (k < 0 || k > n - 1) {
    throw Error(ErrorCode::UnsupportedOrder,
                "Dirac derivative of order " + std::to_string(k) + " needs more than " +
                    std::to_string(n) + " nodes");
  }
  const double scale = 1.0 / std::pow(grid.dt(), k + 1);
  Mat<T> m = Mat<T>::Zero(n, n);
  double binom = 1.0;
  for (int d = 0; d <= k; ++d) {
    const double value = ((d % 2) ? -binom : binom) * scale;
    for (int i = d; i < n; ++i) m(i, i - d) = value;
    binom = binom * (k - d) / (d + 1);
  }
  return GridOperator<T>(grid, std::move(m));
}

template <class T>
GridOperator<T> sample_smooth(const TimeGrid& grid, const BivariateFn& f) {
  const int n = grid.n_nodes();
  Mat<T> m = Mat<T>::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double t = grid.node(j);
    for (int i = j; i < n; ++i) m(i, j) = f(grid.node(i), t);
  }
  return GridOperator<T>(grid, std::move(m));
}

template class GridOperator<double>;
template class GridOperator<Complex>;
template GridOperator<double> theta_operator<double>(const TimeGrid&);
template GridOperator<Complex> theta_operator<Complex>(const TimeGrid&);
template GridOperator<double> delta_operator<double>(const TimeGrid&, int);
template GridOperator<Complex> delta_operator<Complex>(const TimeGrid&, int);
template GridOperator<double> sample_smooth<double>(const TimeGrid&, const BivariateFn&);
template GridOperator<Complex> sample_smooth<Complex>(const TimeGrid&, const BivariateFn&);

}  // namespace tox
