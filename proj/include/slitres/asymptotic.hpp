// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_ASYMPTOTIC_HPP
#define SLITRES_ASYMPTOTIC_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slitres/kernels.hpp"
#include "slitres/specfun.hpp"

namespace slitres
{

// Slab of thickness l = 1 with slits of width h centred at the given abscissas.
struct SlitArray
{
  double h = 0.01;
  double l = 1.0;
  std::vector<double> centers = {0.0};

  int size() const { return static_cast<int>(centers.size()); }
  void validate() const;
};

struct SearchRegion
{
  double eps0 = 0.5;
  double radius = 200.0;
  double arg_min = -pi / 4.0;
  double arg_max = 0.0;

  bool contains(cd k) const;
  cd project(cd k) const;
};

enum class Method
{
  asym1,
  asym3,
  direct
};

enum class AsymOrder
{
  first,
  third
};

std::string to_string(Method m);
Method method_from_string(const std::string &s);

struct Resonance
{
  int m = 1;
  int j = 1;
  Parity parity = Parity::even;
  cd k = 0.0;
  Method method = Method::asym1;
  double error_estimate = 0.0;
  std::string status = "ok";
};

// Slab parity carried by Fabry-Perot index m: odd m gives the even mode.
Parity parity_of_mode(int m);

cd delta_fn(cd eps, double alpha);
double alpha_closed();

struct AlphaDiagnostics
{
  double alpha = 0.0;
  double residual = 0.0;
  double p_norm = 0.0;
};
double alpha_truncated(int M_modes, AlphaDiagnostics *diag = nullptr);

// Entry (i, j) = H0^(1)(k (D_j - D_i)), zero diagonal. With CrossRule::sommerfeld
// the absolute offset is used instead, giving a symmetric matrix.
Eigen::MatrixXcd s_matrix(cd k, const std::vector<double> &centers,
                          CrossRule rule = CrossRule::continuation);

// Descending |lambda|, ties (relative 1e-12) by descending Im lambda.
std::vector<cd> eig_sorted(const Eigen::MatrixXcd &mat);

// Eigenvalues permuted to follow `previous` under a greedy one-to-one assignment,
// resolving the least ambiguous entries first.
std::vector<cd> eig_matched(const Eigen::MatrixXcd &mat, const std::vector<cd> &previous);

Resonance resonance_asym(const SlitArray &geometry, int m, int j, AsymOrder order,
                         double alpha = alpha_closed(), CrossRule rule = CrossRule::continuation);

struct ModeCoefficients
{
  cd b0 = 1.0;
  Eigen::VectorXcd a;  // a(n) for n = 0..M; a(0) unused
  double residual = 0.0;
};

// Single-slit in-slit coefficients at k (b0 normalised to 1), asymptotic kernels.
ModeCoefficients mode_coefficients(const SlitArray &geometry, cd k, Parity parity, int M_modes);

}  // namespace slitres

#endif  // SLITRES_ASYMPTOTIC_HPP
