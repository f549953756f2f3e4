#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tox/error.hpp"

namespace tox {

using Complex = std::complex<double>;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// Uniform grid shared by both time variables; node i sits at t_start + i*dt.
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, int n_nodes);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  int n_nodes() const { return n_nodes_; }
  double dt() const { return dt_; }
  double node(int i) const { return t_start_ + i * dt_; }
  std::vector<double> nodes() const;

  // Grid made of nodes first..n_nodes-1, keeping dt unchanged.
  TimeGrid trailing(int first) const;

  bool operator==(const TimeGrid& other) const {
    return n_nodes_ == other.n_nodes_ && t_start_ == other.t_start_ && dt_ == other.dt_;
  }
  bool operator!=(const TimeGrid& other) const { return !(*this == other); }

 private:
  TimeGrid(double t_start, double dt, int n_nodes, bool);

  double t_start_;
  double t_end_;
  int n_nodes_;
  double dt_;
};

TimeGrid make_grid(double t_start, double t_end, int n_nodes);

// f(t', t) on the grid: row index is t', column index is t.
template <class T>
class GridOperator {
 public:
  // The strict upper triangle of `data` is discarded.
  GridOperator(const TimeGrid& grid, Mat<T> data);

  static GridOperator zero(const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  const Mat<T>& data() const { return data_; }
  int size() const { return grid_.n_nodes(); }
  T operator()(int i, int j) const { return data_(i, j); }
  bool is_zero() const { return zero_; }

  double norm() const { return zero_ ? 0.0 : data_.norm(); }

  // Restriction to the trailing block of nodes first..end. For causal
  // operators this is an algebra homomorphism.
  GridOperator trailing(int first) const;

  GridOperator conjugate() const;

  GridOperator operator-() const;
  GridOperator& operator+=(const GridOperator& other);
  GridOperator& operator-=(const GridOperator& other);
  GridOperator& operator*=(T scale);

  friend GridOperator operator+(GridOperator a, const GridOperator& b) { return a += b; }
  friend GridOperator operator-(GridOperator a, const GridOperator& b) { return a -= b; }
  friend GridOperator operator*(T s, GridOperator a) { return a *= s; }
  friend GridOperator operator*(GridOperator a, T s) { return a *= s; }

 private:
  GridOperator(const TimeGrid& grid, Mat<T> data, bool zero)
      : grid_(grid), data_(std::move(data)), zero_(zero) {}
  void refresh_zero() { zero_ = data_.isZero(0.0); }

  TimeGrid grid_;
  Mat<T> data_;
  bool zero_;
};

using BivariateFn = std::function<double(double tp, double t)>;

template <class T>
GridOperator<T> theta_operator(const TimeGrid& grid);

template <class T>
GridOperator<T> delta_operator(const TimeGrid& grid, int k);

template <class T>
GridOperator<T> sample_smooth(const TimeGrid& grid, const BivariateFn& f);

void require_same_grid(const TimeGrid& a, const TimeGrid& b);

}  // namespace tox
