#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tox/problem.hpp"
#include "tox/star_matrix.hpp"

namespace tox {

// Classical RK4 for dU/dt' = A~(t') U, U(t_start) = Id. Entries are
// evaluated as f(t', t_start).
Mat<double> rk4_propagator(const BivariateTable& fns, double t_start, double t_end, int steps);

// U(node_i, t_start) at every grid node, using `substeps` RK4 steps per grid interval.
std::vector<Mat<double>> rk4_trajectory(const BivariateTable& fns, const TimeGrid& grid, int substeps);

// w^H U(node_i, t_start) v along the grid.
Vec<double> rk4_bilinear(const BivariateTable& fns, const TimeGrid& grid, const Vec<double>& w,
                         const Vec<double>& v, int substeps);

// RK4 substeps per grid interval giving roughly 10^4 steps over the interval,
// or the explicit per-interval count when `oracle_steps` is positive.
int oracle_substeps(const TimeGrid& grid, int oracle_steps);

// w^H (A^{*j}) v from explicit matrix powers.
template <class T>
GridOperator<T> brute_moment(const StarMatrix<T>& a, const Vec<T>& w, const Vec<T>& v, int j);

// (e^{A t})_{11} for the constant 3x3 matrix of example1.
double example1_u11(double t);

ProblemSpec random_problem(std::uint64_t seed, int size, double density = 1.0);

// example1, example2, zero, scalar, scalar_cos, diag2, random8.
std::map<std::string, ProblemSpec> example_library();
ProblemSpec library_problem(const std::string& name);

}  // namespace tox
