// SPDX-License-Identifier: Apache-2.0

#include "slitres/direct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace slitres
{

namespace
{

constexpr cd I(0.0, 1.0);

int mode_position(int M, int n)
{
  if (n == 0)
  {
    return 0;
  }
  if (n % 2 == 0)
  {
    return n / 2;
  }
  return 1 + M / 2 + (n - 1) / 2;
}

// Exact (0,0) cross kernel, optionally with the higher cross entries from the path
// integral. Returned for D > 0; the Sommerfeld integral gives
// d_mn(-D) = (-1)^{m+n} d_mn(D).
Eigen::MatrixXcd cross_d(cd k, double h, double D, int M, Backend backend, CrossMode mode,
                         const QuadratureConfig &cfg, double &err)
{
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(M + 1, M + 1);
  err = 0.0;
  if (backend == Backend::quadrature && mode == CrossMode::full)
  {
    d = d_cross_table(k, h, D, M, cfg, &err);
  }
  if (backend == Backend::quadrature)
  {
    const KernelValue d00 = d_cross_00(k, h, D, cfg, CrossRule::sommerfeld);
    d(0, 0) = d00.value;
    err = std::max(err, d00.accuracy_estimate);
  }
  else
  {
    d(0, 0) = pi / 4.0 * hankel1_0(k * D);
    err = std::norm(k * h);
  }
  return d;
}

cd log_det(const Eigen::MatrixXcd &a)
{
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::MatrixXcd &u = lu.matrixLU();
  cd s = 0.0;
  for (int i = 0; i < u.rows(); i++)
  {
    s += std::log(u(i, i));
  }
  if (lu.permutationP().determinant() < 0)
  {
    s += cd(0.0, pi);
  }
  return s;
}

}  // namespace

int TruncatedSystem::index(int p, int n) const
{
  if (p < 0 || p >= geometry.size() || n < 0 || n > M_modes)
  {
    throw std::out_of_range("TruncatedSystem::index");
  }
  return p * (M_modes + 1) + mode_position(M_modes, n);
}

TruncatedSystem assemble_multi(cd k, const SlitArray &geometry, Parity parity, int M, Backend backend,
                               CrossMode cross_mode, const QuadratureConfig &cfg)
{
  geometry.validate();
  if (M < 4)
  {
    throw std::invalid_argument("assemble: M_modes must be at least 4");
  }
  const int N = geometry.size();
  const double l = geometry.l;
  const double h = geometry.h / l;
  const cd kl = k * l;
  const double sigma = (parity == Parity::even) ? 1.0 : -1.0;

  Eigen::MatrixXcd F(M + 1, M + 1);
  for (int m = 0; m <= M; m++)
  {
    for (int n = 0; n <= M; n++)
    {
      F(m, n) = c_factor(kl, h, m, n, parity);
    }
  }
  const cd q0 = std::exp(I * kl) - sigma;
  const cd p0 = std::exp(I * kl) + sigma;

  double err_self = 0.0;
  const Eigen::MatrixXcd dself =
    (backend == Backend::quadrature) ? d_single_table_quad(kl, h, M, cfg, &err_self) : d_single_table_asym(kl, h, M);
  const Eigen::MatrixXcd cself = F.cwiseProduct(dself);

  const int B = M + 1;
  Eigen::MatrixXcd nat = Eigen::MatrixXcd::Zero(N * B, N * B);
  double err = err_self;
  std::map<double, Eigen::MatrixXcd> cache;
  for (int p = 0; p < N; p++)
  {
    for (int q = 0; q < N; q++)
    {
      Eigen::MatrixXcd c;
      if (p == q)
      {
        c = cself;
      }
      else
      {
        const double D = (geometry.centers[q] - geometry.centers[p]) / l;
        const double aD = std::abs(D);
        auto it = cache.find(aD);
        if (it == cache.end())
        {
          double e = 0.0;
          it = cache.emplace(aD, F.cwiseProduct(cross_d(kl, h, aD, M, backend, cross_mode, cfg, e))).first;
          err = std::max(err, e);
        }
        c = it->second;
        if (D < 0.0)
        {
          for (int m = 0; m <= M; m++)
          {
            for (int n = 0; n <= M; n++)
            {
              if ((m + n) % 2 != 0)
              {
                c(m, n) = -c(m, n);
              }
            }
          }
        }
      }
      // Row n of slit p, column m of slit q; coefficient of a_m in row n is c_mn.
      for (int n = 0; n <= M; n++)
      {
        const int r = p * B + n;
        nat(r, q * B) -= q0 * c(0, n);
        for (int m = 1; m <= M; m++)
        {
          nat(r, q * B + m) -= c(m, n);
        }
      }
      if (p == q)
      {
        nat(p * B, p * B) += 2.0 * p0;
        for (int n = 1; n <= M; n++)
        {
          nat(p * B + n, p * B + n) += 1.0;
        }
      }
    }
  }

  TruncatedSystem sys;
  sys.k = k;
  sys.geometry = geometry;
  sys.parity = parity;
  sys.M_modes = M;
  sys.kernel_error = err;
  sys.entries.resize(N * B, N * B);
  std::vector<int> pos(N * B);
  for (int p = 0; p < N; p++)
  {
    for (int n = 0; n <= M; n++)
    {
      pos[p * B + n] = p * B + mode_position(M, n);
    }
  }
  for (int r = 0; r < N * B; r++)
  {
    for (int c = 0; c < N * B; c++)
    {
      sys.entries(pos[r], pos[c]) = nat(r, c);
    }
  }
  if (!sys.entries.allFinite())
  {
    throw std::runtime_error("assemble: non-finite matrix entries");
  }
  return sys;
}

TruncatedSystem assemble_single(cd k, double h, Parity parity, int M, Backend backend, const QuadratureConfig &cfg)
{
  SlitArray g;
  g.h = h;
  g.centers = {0.0};
  return assemble_multi(k, g, parity, M, backend, CrossMode::leading, cfg);
}

double sigma_min(const Eigen::MatrixXcd &m)
{
  Eigen::MatrixXcd s = m;
  for (int r = 0; r < s.rows(); r++)
  {
    const double mx = s.row(r).cwiseAbs().maxCoeff();
    if (mx > 0.0)
    {
      s.row(r) /= mx;
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double sigma_min(const TruncatedSystem &sys)
{
  return sigma_min(sys.entries);
}

RootSolveReport newton_det(const std::function<Eigen::MatrixXcd(cd)> &system, cd k_seed,
                           const SearchRegion &region, const SolverOptions &opt, double max_step)
{
  RootSolveReport rep;
  cd k = k_seed;
  for (int it = 1; it <= opt.max_iter; it++)
  {
    rep.iterations = it;
    const cd l0 = log_det(system(k));
    if (!std::isfinite(l0.real()))
    {
      // Exactly singular to working precision.
      rep.last_step = 0.0;
      break;
    }
    const double dk = opt.fd_step * std::abs(k);
    const cd rp = std::exp(log_det(system(k + dk)) - l0);
    const cd rm = std::exp(log_det(system(k - dk)) - l0);
    cd step = -2.0 * dk / (rp - rm);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
    {
      rep.message = "derivative of det vanished";
      rep.last_step = 1e300;
      break;
    }
    if (std::abs(step) > max_step)
    {
      step *= max_step / std::abs(step);
    }
    k = region.project(k + step);
    rep.last_step = std::abs(step);
    if (rep.last_step <= opt.tol * std::abs(k))
    {
      break;
    }
  }
  rep.k_root = k;
  return rep;
}

RootSolveReport refine_root(const SlitArray &geometry, Parity parity, cd k_seed, const SearchRegion &region,
                            const SolverOptions &opt)
{
  geometry.validate();
  if (opt.tol < 1e-13)
  {
    throw std::invalid_argument("refine_root: tolerance below 1e-13");
  }
  if (!region.contains(k_seed * geometry.l))
  {
    throw std::domain_error("refine_root: seed outside the search region");
  }
  const double h = geometry.h / geometry.l;
  const int m = std::max(1L, std::lround((k_seed * geometry.l).real() / pi));
  const double km = m * pi;
  const double disk = std::sqrt(h);
  auto system = [&](cd kl)
  {
    return assemble_multi(kl / geometry.l, geometry, parity, opt.M_modes, opt.backend, opt.cross_mode, opt.quad)
      .entries;
  };

  RootSolveReport rep = newton_det(system, k_seed * geometry.l, region, opt, 0.25 * disk);
  const cd k = rep.k_root / geometry.l;
  rep.k_root = k;
  auto stepped_ok = [&]() { return rep.last_step <= opt.tol * std::abs(k); };
  rep.residual = sigma_min(system(k * geometry.l));
  rep.in_disk = std::abs(k * geometry.l - km) <= disk;
  // The disk about k_m is asymptotic: at h ~ 1e-2 genuine roots already sit just
  // outside it. Acceptance therefore asks for the same radius about the seed.
  const bool near_seed = std::abs((k - k_seed) * geometry.l) <= disk;
  const bool stepped = stepped_ok();
  rep.converged = stepped && rep.residual <= opt.sigma_tol && near_seed;
  if (!near_seed)
  {
    rep.message = "root left the disk of radius sqrt(h) about the seed";
  }
  else if (!stepped)
  {
    rep.message = rep.message.empty() ? "iteration limit reached" : rep.message;
  }
  else if (rep.residual > opt.sigma_tol)
  {
    rep.message = "smallest singular value above tolerance";
  }
  return rep;
}

std::vector<Resonance> find_resonances(const SlitArray &geometry, int m_lo, int m_hi, Method method,
                                       const SolverOptions &opt)
{
  geometry.validate();
  if (m_lo < 1 || m_hi < m_lo)
  {
    throw std::invalid_argument("find_resonances: invalid Fabry-Perot index range");
  }
  const int N = geometry.size();
  std::vector<Resonance> out;
  const SearchRegion region;
  for (int m = m_lo; m <= m_hi; m++)
  {
    for (int j = 1; j <= N; j++)
    {
      if (method != Method::direct)
      {
        out.push_back(resonance_asym(geometry, m, j, method == Method::asym1 ? AsymOrder::first : AsymOrder::third));
        continue;
      }
      // Seeds from the third-order formula with the coupling matrix built from the
      // same cross kernels as the direct system.
      const Resonance seed =
        resonance_asym(geometry, m, j, AsymOrder::third, alpha_closed(), CrossRule::sommerfeld);
      Resonance r = seed;
      r.method = Method::direct;
      try
      {
        const RootSolveReport rep = refine_root(geometry, r.parity, seed.k, region, opt);
        r.k = rep.k_root;
        r.error_estimate = rep.last_step;
        r.status = rep.converged ? "ok" : "failed: " + rep.message;
      }
      catch (const std::exception &e)
      {
        r.status = std::string("failed: ") + e.what();
      }
      out.push_back(r);
    }
  }
  // Two seeds landing on the same root leave the second one flagged.
  for (std::size_t a = 0; a < out.size(); a++)
  {
    for (std::size_t b = a + 1; b < out.size(); b++)
    {
      if (out[a].status == "ok" && out[b].status == "ok" &&
          std::abs(out[a].k - out[b].k) <= 1e-8 * std::abs(out[a].k))
      {
        out[b].status = "duplicate";
      }
    }
  }
  return out;
}

namespace
{

double power_norm(const Eigen::MatrixXcd &a)
{
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()) / std::sqrt(double(a.cols()));
  double lam = 0.0;
  for (int it = 0; it < 20000; it++)
  {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0)
    {
      return 0.0;
    }
    w /= nw;
    const double diff = std::abs(nw - lam);
    lam = nw;
    v = w;
    if (diff <= 1e-15 * lam && it > 10)
    {
      break;
    }
  }
  return std::sqrt(lam);
}

}  // namespace

OperatorNorms operator_norm_check(cd k, double h, int M, const QuadratureConfig &cfg)
{
  if (M < 1)
  {
    throw std::invalid_argument("operator_norm_check: need M_modes >= 1");
  }
  const Eigen::MatrixXcd d = d_single_table_quad(k, h, 2 * M, cfg);
  Eigen::MatrixXcd ae(M, M), ao(M, M);
  for (int i = 1; i <= M; i++)
  {
    for (int j = 1; j <= M; j++)
    {
      const double dl = (i == j) ? 1.0 : 0.0;
      ae(i - 1, j - 1) = c_factor(k, h, 2 * i, 2 * j, Parity::even) * d(2 * i, 2 * j) + dl;
      ao(i - 1, j - 1) = c_factor(k, h, 2 * i - 1, 2 * j - 1, Parity::even) * d(2 * i - 1, 2 * j - 1) + dl;
    }
  }
  return {power_norm(ae), power_norm(ao)};
}

Eigen::MatrixXd sigma_min_scan(const SlitArray &geometry, Parity parity, cd center, double radius, int n,
                               const SolverOptions &opt)
{
  if (n < 2)
  {
    throw std::invalid_argument("sigma_min_scan: need n >= 2");
  }
  Eigen::MatrixXd out(n, n);
  for (int a = 0; a < n; a++)
  {
    for (int b = 0; b < n; b++)
    {
      const cd k = center + cd(-radius + 2.0 * radius * b / (n - 1), -radius + 2.0 * radius * a / (n - 1));
      out(a, b) = sigma_min(assemble_multi(k, geometry, parity, opt.M_modes, opt.backend, opt.cross_mode, opt.quad));
    }
  }
  return out;
}

}  // namespace slitres
