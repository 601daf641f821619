// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_QUADRATURE_HPP
#define SLITRES_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "slitres/specfun.hpp"

namespace slitres
{

struct QuadResult
{
  cd value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand over
// [b_0, b_1] u [b_1, b_2] u ... The error estimate is the plain Kronrod-Gauss
// difference summed over panels, which is pessimistic for smooth integrands.
QuadResult integrate(const std::function<cd(double)> &f, const std::vector<double> &breaks,
                     double rel_tol, double abs_tol, int max_subdivisions);

// Integral over [a, inf) with a > 0, through s = a / u on (0, 1]. The integrand
// must decay at least like 1/s^2.
QuadResult integrate_to_infinity(const std::function<cd(double)> &f, double a,
                                 double rel_tol, double abs_tol, int max_subdivisions);

// Table of separable integrals T(p, q) = int f_p(t) f_q(t) g_{par(p)}(t) dt.
// The callback fills f (length nfun) and the two weight functions g[0], g[1] at t.
// Panels are refined on the largest entrywise Kronrod-Gauss difference.
using SeparableEval = std::function<void(double t, std::span<cd> f, cd g[2])>;

struct TableResult
{
  Eigen::MatrixXcd value;
  double error = 0.0;
  int panels = 0;
  bool converged = false;
};

TableResult integrate_separable(const SeparableEval &eval, int nfun, const std::vector<int> &parity,
                                const std::vector<double> &breaks, double rel_tol, double abs_tol,
                                int max_subdivisions);

}  // namespace slitres

#endif  // SLITRES_QUADRATURE_HPP
