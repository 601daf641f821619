// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_DENSE_EIG_HPP
#define SLITRES_DENSE_EIG_HPP

#include <vector>

#include <Eigen/Dense>

#include "slitres/specfun.hpp"

namespace slitres
{

// All eigenvalues of a small dense complex matrix: diagonal balancing, Householder
// reduction to upper Hessenberg form, then single-shift QR with Wilkinson shifts.
// Unordered. Throws std::runtime_error when the iteration budget (30 sweeps per
// eigenvalue) is exhausted.
std::vector<cd> dense_eigenvalues(const Eigen::MatrixXcd &a);

}  // namespace slitres

#endif  // SLITRES_DENSE_EIG_HPP
