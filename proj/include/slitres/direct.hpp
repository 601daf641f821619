// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_DIRECT_HPP
#define SLITRES_DIRECT_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slitres/asymptotic.hpp"
#include "slitres/kernels.hpp"

namespace slitres
{

enum class CrossMode
{
  full,
  leading
};

struct SolverOptions
{
  int M_modes = 40;
  Backend backend = Backend::quadrature;
  CrossMode cross_mode = CrossMode::full;
  QuadratureConfig quad{};
  double tol = 1.0e-12;
  int max_iter = 50;
  double sigma_tol = 1.0e-8;
  double fd_step = 1.0e-7;
};

// Homogeneous system M(k) x = 0. Unknowns per slit p, in order:
//   b0, a_2, a_4, ..., a_1, a_3, ...
// where a_n = sqrt(n) b_n. Row for mode n of slit p reads
//   a_n - sum_q [ b0^q Q_0 c_0n(D_q - D_p) + sum_m a_m^q c_mn(D_q - D_p) ] = 0
// and row 0 carries 2 P_0 b0 in place of a_n. Self terms use D = 0.
struct TruncatedSystem
{
  cd k = 0.0;
  SlitArray geometry;
  Parity parity = Parity::even;
  int M_modes = 0;
  Eigen::MatrixXcd entries;
  double kernel_error = 0.0;

  int dim() const { return static_cast<int>(entries.rows()); }
  // Position of in-slit mode n (0..M_modes) of slit p.
  int index(int p, int n) const;
};

TruncatedSystem assemble_single(cd k, double h, Parity parity, int M_modes, Backend backend,
                                const QuadratureConfig &cfg = {});
TruncatedSystem assemble_multi(cd k, const SlitArray &geometry, Parity parity, int M_modes, Backend backend,
                               CrossMode cross_mode, const QuadratureConfig &cfg = {});

// Smallest singular value after dividing each row by its largest entry.
double sigma_min(const Eigen::MatrixXcd &m);
double sigma_min(const TruncatedSystem &sys);

struct RootSolveReport
{
  cd k_root = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double last_step = 0.0;
  bool converged = false;
  // |kl - k_m| <= sqrt(h/l) with k_m = m pi nearest the seed; informational.
  bool in_disk = false;
  std::string message;
};

// Newton iteration on det M(k) with the derivative from central differences of
// log det (ratios det(k +- dk)/det(k), so no branch or overflow trouble).
// Converged means: last step <= tol |k|, scaled sigma_min <= sigma_tol, and the
// root within sqrt(h) of the seed.
RootSolveReport refine_root(const SlitArray &geometry, Parity parity, cd k_seed, const SearchRegion &region,
                            const SolverOptions &opt = {});

// The iteration itself for any matrix-valued map, k in units where the region
// applies. Steps are capped at `max_step`. Fills k_root, iterations, last_step.
RootSolveReport newton_det(const std::function<Eigen::MatrixXcd(cd)> &system, cd k_seed,
                           const SearchRegion &region, const SolverOptions &opt, double max_step);

std::vector<Resonance> find_resonances(const SlitArray &geometry, int m_lo, int m_hi, Method method,
                                       const SolverOptions &opt = {});

struct OperatorNorms
{
  double even_block = 0.0;
  double odd_block = 0.0;
};

// 2-norms of (c_{2i,2j} + delta_ij) and (c_{2i-1,2j-1} + delta_ij), i, j = 1..M.
OperatorNorms operator_norm_check(cd k, double h, int M_modes, const QuadratureConfig &cfg = {});

// sigma_min on an n x n grid of the square [center - r, center + r] (both axes),
// row-major from the lower-left corner. Diagnostics only.
Eigen::MatrixXd sigma_min_scan(const SlitArray &geometry, Parity parity, cd center, double radius, int n,
                               const SolverOptions &opt = {});

}  // namespace slitres

#endif  // SLITRES_DIRECT_HPP
