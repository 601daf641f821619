// SPDX-License-Identifier: Apache-2.0

#include "slitres/dense_eig.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slitres
{

namespace
{

// Parlett-Reinsch balancing with radix-2 scalings (exact in floating point).
void balance(Eigen::MatrixXcd &a)
{
  const int n = static_cast<int>(a.rows());
  bool done = false;
  while (!done)
  {
    done = true;
    for (int i = 0; i < n; i++)
    {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; j++)
      {
        if (j != i)
        {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c == 0.0 || r == 0.0)
      {
        continue;
      }
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0)
      {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0)
      {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if ((c + r) < 0.95 * s)
      {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

void hessenberg(Eigen::MatrixXcd &a)
{
  const int n = static_cast<int>(a.rows());
  for (int k = 0; k + 2 < n; k++)
  {
    Eigen::VectorXcd x = a.block(k + 1, k, n - k - 1, 1);
    const double nx = x.norm();
    if (nx == 0.0)
    {
      continue;
    }
    const cd x0 = x(0);
    const cd phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cd(1.0, 0.0);
    Eigen::VectorXcd v = x;
    v(0) += phase * nx;
    const double vn = v.norm();
    if (vn == 0.0)
    {
      continue;
    }
    v /= vn;
    // A <- (I - 2 v v^H) A (I - 2 v v^H)
    auto rows = a.bottomRows(n - k - 1);
    rows -= 2.0 * v * (v.adjoint() * rows);
    auto cols = a.rightCols(n - k - 1);
    cols -= 2.0 * (cols * v) * v.adjoint();
    for (int i = k + 2; i < n; i++)
    {
      a(i, k) = 0.0;
    }
  }
}

}  // namespace

std::vector<cd> dense_eigenvalues(const Eigen::MatrixXcd &input)
{
  if (input.rows() != input.cols())
  {
    throw std::invalid_argument("dense_eigenvalues: matrix must be square");
  }
  const int n = static_cast<int>(input.rows());
  if (!input.allFinite())
  {
    throw std::invalid_argument("dense_eigenvalues: non-finite entries");
  }
  std::vector<cd> eig(n);
  if (n == 0)
  {
    return eig;
  }
  Eigen::MatrixXcd h = input;
  balance(h);
  hessenberg(h);
  const double ulp = std::numeric_limits<double>::epsilon();
  const double scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  int hi = n - 1;
  int iter = 0, total = 0;
  const int budget = 30 * n;
  while (hi >= 0)
  {
    if (hi == 0)
    {
      eig[0] = h(0, 0);
      break;
    }
    int l = hi;
    while (l > 0)
    {
      const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (std::abs(h(l, l - 1)) <= ulp * (s > 0.0 ? s : scale))
      {
        h(l, l - 1) = 0.0;
        break;
      }
      l--;
    }
    if (l == hi)
    {
      eig[hi] = h(hi, hi);
      hi--;
      iter = 0;
      continue;
    }
    if (++total > budget)
    {
      throw std::runtime_error("dense_eigenvalues: QR iteration did not converge");
    }
    iter++;
    // Wilkinson shift from the trailing 2x2 block; exceptional shift now and then.
    const cd a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    cd mu;
    if (iter % 10 == 0)
    {
      mu = d + std::abs(c) * cd(0.75, 0.5);
    }
    else
    {
      const cd half = 0.5 * (a - d);
      const cd disc = std::sqrt(half * half + b * c);
      const cd m1 = 0.5 * (a + d) + disc, m2 = 0.5 * (a + d) - disc;
      mu = (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
    }
    cd x = h(l, l) - mu, y = h(l + 1, l);
    for (int j = l; j < hi; j++)
    {
      const double r = std::hypot(std::abs(x), std::abs(y));
      double cs;
      cd sn;
      if (r == 0.0)
      {
        cs = 1.0;
        sn = 0.0;
      }
      else if (std::abs(x) == 0.0)
      {
        cs = 0.0;
        sn = 1.0;
      }
      else
      {
        cs = std::abs(x) / r;
        sn = (x / std::abs(x)) * std::conj(y) / r;
      }
      // Rows j, j+1 <- G [row j; row j+1], G = [[c, s], [-conj(s), c]].
      for (int col = std::max(l, j - 1); col <= hi; col++)
      {
        const cd u = h(j, col), v = h(j + 1, col);
        h(j, col) = cs * u + sn * v;
        h(j + 1, col) = -std::conj(sn) * u + cs * v;
      }
      // Columns j, j+1 <- [col j, col j+1] G^H.
      for (int row = l; row <= std::min(hi, j + 2); row++)
      {
        const cd u = h(row, j), v = h(row, j + 1);
        h(row, j) = cs * u + std::conj(sn) * v;
        h(row, j + 1) = -sn * u + cs * v;
      }
      if (j + 1 < hi)
      {
        x = h(j + 1, j);
        y = h(j + 2, j);
      }
    }
  }
  return eig;
}

}  // namespace slitres
