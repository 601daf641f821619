// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_KERNELS_HPP
#define SLITRES_KERNELS_HPP

#include <string>

#include <Eigen/Dense>

#include "slitres/specfun.hpp"

namespace slitres
{

enum class Backend
{
  asymptotic,
  quadrature
};

// Slab-symmetric (even) or antisymmetric (odd) field about the slab mid-plane.
enum class Parity
{
  even,
  odd
};

// How a cross kernel at negative offset is defined. "sommerfeld" is the value of
// the spectral integral itself, even in D for (0,0); "continuation" takes H0^(1)
// at negative argument by continuation through the upper half plane.
enum class CrossRule
{
  continuation,
  sommerfeld
};

std::string to_string(Backend b);
std::string to_string(Parity p);
Backend backend_from_string(const std::string &s);

struct KernelValue
{
  int m = 0;
  int n = 0;
  cd value = 0.0;
  Backend backend = Backend::asymptotic;
  double accuracy_estimate = 0.0;
};

struct QuadratureConfig
{
  double rel_tol = 1.0e-11;
  double abs_tol = 1.0e-15;
  // Semi-infinite legs are mapped to (0, 1] beyond this abscissa when it is
  // exceeded by the natural break points. On the deformed cross-slit path the
  // rotated tails are cut where the exponential factor falls below e^-tail_cut.
  double tail_cut = 200.0;
  // Detour amplitude and width of the cross-slit path; <= 0 selects 0.5|k| and
  // 0.2|k|.
  double path_height = 0.0;
  double path_width = 0.0;
  int max_subdivisions = 4000;

  void validate() const;
};

// Largest mode index accepted anywhere.
inline constexpr int max_mode_index = 10000;

// k-independent constants, b, b2 >= pi.
double c0(double b, const QuadratureConfig &cfg = {});
double c0_minus(double b, double b2, const QuadratureConfig &cfg = {});
double c0_plus(double b, double b2, const QuadratureConfig &cfg = {});

// In-slit propagation constant s_n = sqrt(k^2 - (pi n / h)^2), negative-imaginary cut.
cd slit_wavenumber(cd k, double h, int n);

// Single-slit kernels d_mn.
KernelValue d_single_asym(cd k, double h, int m, int n);
KernelValue d_single_quad(cd k, double h, int m, int n, const QuadratureConfig &cfg = {});

// Full tables for indices 0..M. Entries with m + n odd are exactly zero.
Eigen::MatrixXcd d_single_table_quad(cd k, double h, int M, const QuadratureConfig &cfg = {},
                                     double *error = nullptr);
Eigen::MatrixXcd d_single_table_asym(cd k, double h, int M);

// Cross-slit kernels at centre offset D, |D| > h.
KernelValue d_cross_00(cd k, double h, double D, const QuadratureConfig &cfg = {},
                       CrossRule rule = CrossRule::continuation);
KernelValue d_cross_general(cd k, double h, int m, int n, double D, const QuadratureConfig &cfg = {});
Eigen::MatrixXcd d_cross_table(cd k, double h, double D, int M, const QuadratureConfig &cfg = {},
                               double *error = nullptr);

// mu(xi) = sqrt(k^2 - xi^2) continued along the deformed path from mu(0) = k.
cd path_mu(cd xi, cd k);

// Point of the deformed cross-slit path and its derivative, exposed for tests.
struct PathGeometry
{
  double height, width, t_end;
  double k_re;
  cd point(double t) const;
  cd tangent(double t) const;
};
PathGeometry make_path(cd k, const QuadratureConfig &cfg, double D = 0.0);

// Factor F with c_mn = F * d_mn for the chosen slab parity (l = 1):
//   (0,0): 4 s_0 h / pi
//   (m,0): Q_m (4 s_m h / pi) / sqrt(m)
//   (0,n): (4 s_0 h / pi) sqrt(n) / P_n
//   (m,n): (4 s_m h / pi) sqrt(n/m) Q_m / P_n
// with P_j = e^{i s_j} + sigma, Q_j = e^{i s_j} - sigma and sigma = +1 (even) or -1 (odd).
cd c_factor(cd k, double h, int m, int n, Parity parity);

KernelValue c_single(cd k, double h, int m, int n, Parity parity, Backend backend,
                     const QuadratureConfig &cfg = {});
KernelValue c_cross(cd k, double h, int m, int n, double D, Parity parity, Backend backend,
                    const QuadratureConfig &cfg = {}, CrossRule rule = CrossRule::continuation);

}  // namespace slitres

#endif  // SLITRES_KERNELS_HPP
