// SPDX-License-Identifier: Apache-2.0

#include "slitres/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "slitres/dense_eig.hpp"

namespace slitres
{

namespace
{

constexpr cd I(0.0, 1.0);

}  // namespace

void SlitArray::validate() const
{
  if (!(h > 0.0) || !std::isfinite(h))
  {
    throw std::invalid_argument("slit width must be positive");
  }
  if (!(l > 0.0))
  {
    throw std::invalid_argument("slab thickness must be positive");
  }
  if (centers.empty())
  {
    throw std::invalid_argument("at least one slit centre is required");
  }
  for (std::size_t i = 0; i < centers.size(); i++)
  {
    for (std::size_t j = i + 1; j < centers.size(); j++)
    {
      if (!(std::abs(centers[i] - centers[j]) > 10.0 * h))
      {
        throw std::invalid_argument("slit centres must be separated by more than 10 h");
      }
    }
  }
}

bool SearchRegion::contains(cd k) const
{
  const double r = std::abs(k), a = std::arg(k);
  return r >= eps0 && r <= radius && a >= arg_min && a <= arg_max && k.real() > 0.0;
}

cd SearchRegion::project(cd k) const
{
  const double r = std::clamp(std::abs(k), eps0, radius);
  const double a = std::clamp(std::arg(k), arg_min, arg_max);
  return std::polar(r, a);
}

std::string to_string(Method m)
{
  switch (m)
  {
    case Method::asym1:
      return "asym1";
    case Method::asym3:
      return "asym3";
    default:
      return "direct";
  }
}

Method method_from_string(const std::string &s)
{
  if (s == "asym1")
  {
    return Method::asym1;
  }
  if (s == "asym3")
  {
    return Method::asym3;
  }
  if (s == "direct")
  {
    return Method::direct;
  }
  throw std::invalid_argument("unknown method '" + s + "'");
}

Parity parity_of_mode(int m)
{
  return (m % 2 == 1) ? Parity::even : Parity::odd;
}

cd delta_fn(cd eps, double alpha)
{
  const double g = euler_gamma();
  return eps + (2.0 * I / pi) * (g - std::log(2.0) - 1.5 + 0.5 * pi * alpha) * eps +
         (2.0 * I / pi) * eps * std::log(eps);
}

double alpha_closed()
{
  return 1.0 / pi - 2.0 / pi * std::log(pi / 2.0);
}

double alpha_truncated(int M, AlphaDiagnostics *diag)
{
  if (M < 1)
  {
    throw std::invalid_argument("alpha_truncated: need at least one mode");
  }
  Eigen::MatrixXd P(M, M);
  Eigen::VectorXd v(M);
  for (int i = 1; i <= M; i++)
  {
    v(i - 1) = std::sqrt(double(i)) * ((i % 2 == 0) ? 1.0 : -1.0) * c0(2.0 * pi * i);
    for (int j = i; j <= M; j++)
    {
      const double sg = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      P(i - 1, j - 1) = P(j - 1, i - 1) = 8.0 * std::sqrt(double(i) * j) * sg * c0_minus(2.0 * pi * i, 2.0 * pi * j);
    }
  }
  const Eigen::MatrixXd A = 2.0 * Eigen::MatrixXd::Identity(M, M) - P;
  const Eigen::VectorXd x = A.partialPivLu().solve(v);
  const double alpha = 32.0 / pi * x.dot(v);
  if (diag)
  {
    diag->alpha = alpha;
    diag->residual = (A * x - v).norm();
    diag->p_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(P).singularValues()(0);
  }
  return alpha;
}

Eigen::MatrixXcd s_matrix(cd k, const std::vector<double> &centers, CrossRule rule)
{
  const int n = static_cast<int>(centers.size());
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j < n; j++)
    {
      if (i == j)
      {
        continue;
      }
      double d = centers[j] - centers[i];
      if (d == 0.0)
      {
        throw std::invalid_argument("s_matrix: coincident slit centres");
      }
      if (rule == CrossRule::sommerfeld)
      {
        d = std::abs(d);
      }
      s(i, j) = hankel1_0(k * d);
    }
  }
  return s;
}

std::vector<cd> eig_sorted(const Eigen::MatrixXcd &mat)
{
  if (mat.rows() > 64)
  {
    throw std::invalid_argument("eig_sorted: at most 64 x 64");
  }
  std::vector<cd> ev = dense_eigenvalues(mat);
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  std::stable_sort(ev.begin(), ev.end(),
                   [scale](cd a, cd b)
                   {
                     const double da = std::abs(a), db = std::abs(b);
                     if (std::abs(da - db) > 1e-12 * scale)
                     {
                       return da > db;
                     }
                     return a.imag() > b.imag();
                   });
  return ev;
}

std::vector<cd> eig_matched(const Eigen::MatrixXcd &mat, const std::vector<cd> &previous)
{
  std::vector<cd> ev = dense_eigenvalues(mat);
  const int n = static_cast<int>(ev.size());
  if (static_cast<int>(previous.size()) != n)
  {
    throw std::invalid_argument("eig_matched: previous eigenvalue list has the wrong length");
  }
  std::vector<cd> out(n);
  std::vector<bool> used_prev(n, false), used_new(n, false);
  for (int step = 0; step < n; step++)
  {
    // Pick the unassigned previous value whose best candidate is most clearly
    // separated from its second best (smallest ambiguity ratio).
    int best_p = -1, best_q = -1;
    double best_ratio = 0.0;
    for (int p = 0; p < n; p++)
    {
      if (used_prev[p])
      {
        continue;
      }
      double d1 = 1e300, d2 = 1e300;
      int q1 = -1;
      for (int q = 0; q < n; q++)
      {
        if (used_new[q])
        {
          continue;
        }
        const double d = std::abs(ev[q] - previous[p]);
        if (d < d1)
        {
          d2 = d1;
          d1 = d;
          q1 = q;
        }
        else if (d < d2)
        {
          d2 = d;
        }
      }
      const double ratio = (d2 >= 1e300) ? 0.0 : d1 / std::max(d2, 1e-300);
      if (best_p < 0 || ratio < best_ratio)
      {
        best_p = p;
        best_q = q1;
        best_ratio = ratio;
      }
    }
    out[best_p] = ev[best_q];
    used_prev[best_p] = true;
    used_new[best_q] = true;
  }
  return out;
}

Resonance resonance_asym(const SlitArray &geometry, int m, int j, AsymOrder order, double alpha, CrossRule rule)
{
  geometry.validate();
  const int N = geometry.size();
  if (m < 1)
  {
    throw std::invalid_argument("resonance_asym: Fabry-Perot index must be >= 1");
  }
  if (j < 1 || j > N)
  {
    throw std::invalid_argument("resonance_asym: branch index out of range");
  }
  const double h = geometry.h / geometry.l;
  std::vector<double> centers = geometry.centers;
  for (double &c : centers)
  {
    c /= geometry.l;
  }
  const double km = m * pi;
  const double eps = km * h;
  if (eps > 0.3)
  {
    throw std::domain_error("resonance_asym: m pi h exceeds 0.3, outside the asymptotic regime");
  }
  const cd dlt = delta_fn(eps, alpha);
  std::vector<cd> lam1(N, 0.0);
  if (N > 1)
  {
    lam1 = eig_sorted(s_matrix(km, centers, rule));
  }
  const cd D1 = dlt + eps * lam1[j - 1];
  const cd d1 = -I * D1 - D1 * D1 / km;
  Resonance r;
  r.m = m;
  r.j = j;
  r.parity = parity_of_mode(m);
  const double lg = std::abs(std::log(eps));
  if (order == AsymOrder::first)
  {
    r.k = km + d1;
    r.method = Method::asym1;
    r.error_estimate = eps * eps * lg;
  }
  else
  {
    cd lam2 = 0.0;
    if (N > 1)
    {
      lam2 = eig_matched(s_matrix(km + d1, centers, rule), lam1)[j - 1];
    }
    const cd D2 = dlt + eps * lam2;
    r.k = km - I * (1.0 + 2.0 * h / pi) * D2 - (1.0 / km - 5.0 * h / (pi * km)) * D2 * D2 +
          I * (1.0 / (km * km) - 1.0 / 12.0) * D2 * D2 * D2;
    r.method = Method::asym3;
    r.error_estimate = eps * eps * eps * lg;
  }
  r.k /= geometry.l;
  if (!(r.k.imag() < 0.0))
  {
    r.status = "outside_region";
  }
  return r;
}

ModeCoefficients mode_coefficients(const SlitArray &geometry, cd k, Parity parity, int M)
{
  geometry.validate();
  if (geometry.size() != 1)
  {
    throw std::invalid_argument("mode_coefficients: single slit only");
  }
  if (M < 4)
  {
    throw std::invalid_argument("mode_coefficients: need M_modes >= 4");
  }
  const double h = geometry.h / geometry.l;
  const cd kl = k * geometry.l;
  const Eigen::MatrixXcd d = d_single_table_asym(kl, h, M);
  const double sigma = (parity == Parity::even) ? 1.0 : -1.0;
  const cd q0 = std::exp(I * kl) - sigma;
  // Even-index unknowns a_2, a_4, ...: a_n - sum_m c_mn a_m = q0 c_0n (b0 = 1).
  std::vector<int> idx;
  for (int n = 2; n <= M; n += 2)
  {
    idx.push_back(n);
  }
  const int ne = static_cast<int>(idx.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(ne, ne);
  Eigen::VectorXcd rhs(ne);
  for (int r = 0; r < ne; r++)
  {
    const int n = idx[r];
    rhs(r) = q0 * c_factor(kl, h, 0, n, parity) * d(0, n);
    for (int c = 0; c < ne; c++)
    {
      const int m = idx[c];
      A(r, c) -= c_factor(kl, h, m, n, parity) * d(m, n);
    }
  }
  const Eigen::VectorXcd x = A.partialPivLu().solve(rhs);
  ModeCoefficients out;
  out.b0 = 1.0;
  out.a = Eigen::VectorXcd::Zero(M + 1);
  for (int r = 0; r < ne; r++)
  {
    out.a(idx[r]) = x(r);
  }
  out.residual = (A * x - rhs).norm();
  return out;
}

}  // namespace slitres
