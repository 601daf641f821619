// SPDX-License-Identifier: Apache-2.0

#include "slitres/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "slitres/quadrature.hpp"

namespace slitres
{

namespace
{

constexpr cd I(0.0, 1.0);

double sign_pow(int e)
{
  return (std::abs(e) % 2 == 0) ? 1.0 : -1.0;
}

void check_index(int m, const char *what)
{
  if (m < 0 || m > max_mode_index)
  {
    throw std::invalid_argument(std::string(what) + ": mode index out of range [0, 1e4]");
  }
}

void check_width(double h, const char *what)
{
  if (!(h > 0.0) || !std::isfinite(h))
  {
    throw std::invalid_argument(std::string(what) + ": slit width must be positive");
  }
}

double real_integral(const std::function<double(double)> &f, std::vector<double> breaks, double tail_from,
                     const QuadratureConfig &cfg)
{
  auto fc = [&](double t) { return cd(f(t), 0.0); };
  const QuadResult a = integrate(fc, breaks, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const QuadResult b = integrate_to_infinity(fc, tail_from, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (!a.converged || !b.converged)
  {
    throw std::runtime_error("constant quadrature did not reach the requested tolerance");
  }
  return (a.value + b.value).real();
}

// (1 - e^{-s} - s) / s^2, accurate for small s.
double one_minus_exp_minus_lin_over_sq(double s)
{
  if (s < 0.1)
  {
    double term = 1.0, sum = 0.0;
    // -sum_{j>=2} (-s)^j / j! / s^2
    for (int j = 2; j < 14; j++)
    {
      term = (j == 2) ? 0.5 : term * (-s) / j;
      sum -= term;
    }
    return sum;
  }
  return (-std::expm1(-s) - s) / (s * s);
}

// (1 + i x - e^{i x}) / x^2 for complex x, accurate for small |x|.
cd g00(cd x)
{
  if (std::abs(x) < 0.2)
  {
    // -sum_{j>=2} (i x)^j / j! / x^2 = -sum_{j>=2} i^j x^{j-2} / j!
    cd term = -0.5, sum = 0.0;  // i^2 / 2 = -1/2
    for (int j = 2; j < 18; j++)
    {
      if (j > 2)
      {
        term *= I * x / static_cast<double>(j);
      }
      sum -= term;
    }
    return sum;
  }
  return (1.0 + I * x - std::exp(I * x)) / (x * x);
}

void check_eps(cd eps, const char *what)
{
  if (!(eps.real() > 0.0))
  {
    throw std::domain_error(std::string(what) + ": requires Re(kh) > 0");
  }
}

// d_00 through the rotated representation, free of the eps^-2 amplification.
KernelValue d00_quad(cd k, double h, const QuadratureConfig &cfg)
{
  const cd eps = k * h;
  check_eps(eps, "d_single_quad");
  auto leg_a = [&](double phi) { return g00(eps * std::sin(phi)); };
  const QuadResult a = integrate(leg_a, {0.0, pi / 4.0, pi / 2.0}, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const cd e2 = eps * eps;
  auto leg_b = [&](double s) { return one_minus_exp_minus_lin_over_sq(s) / sqrt_principal(e2 + s * s); };
  const double ae = std::abs(eps);
  std::vector<double> br = {0.0};
  if (ae < 1.0)
  {
    br.push_back(ae);
  }
  br.push_back(std::max(1.0, ae));
  const QuadResult b = integrate(leg_b, br, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const QuadResult c = integrate_to_infinity(leg_b, br.back(), cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (!a.converged || !b.converged || !c.converged)
  {
    throw std::runtime_error("d_single_quad: (0,0) quadrature did not converge");
  }
  KernelValue kv{0, 0, a.value + I * (b.value + c.value), Backend::quadrature, a.error + b.error + c.error};
  return kv;
}

// d_{0n}, n > 0 even.
KernelValue d0n_quad(cd k, double h, int n, const QuadratureConfig &cfg)
{
  const cd eps = k * h;
  check_eps(eps, "d_single_quad");
  const double bn = pi * n;
  auto leg_a = [&](double phi)
  {
    const cd x = eps * std::sin(phi);
    return (1.0 - std::exp(I * x)) / (x * x - bn * bn);
  };
  const cd e2 = eps * eps;
  auto leg_b = [&](double s) { return -std::expm1(-s) / ((s * s + bn * bn) * sqrt_principal(e2 + s * s)); };
  const QuadResult a = integrate(leg_a, {0.0, pi / 4.0, pi / 2.0}, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  std::vector<double> br = {0.0};
  const double ae = std::abs(eps);
  if (ae < 1.0)
  {
    br.push_back(ae);
  }
  br.push_back(std::max(1.0, ae));
  if (bn > br.back())
  {
    br.push_back(bn);
  }
  const QuadResult b = integrate(leg_b, br, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const QuadResult c = integrate_to_infinity(leg_b, br.back(), cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (!a.converged || !b.converged || !c.converged)
  {
    throw std::runtime_error("d_single_quad: (0,n) quadrature did not converge");
  }
  const double sg = sign_pow(n / 2);
  return {0, n, sg * (a.value + I * (b.value + c.value)), Backend::quadrature, a.error + b.error + c.error};
}

// Table over positive indices idx (all pairs, same-parity entries meaningful).
Eigen::MatrixXcd positive_table(cd k, double h, const std::vector<int> &idx, const QuadratureConfig &cfg,
                                double &error)
{
  const cd eps = k * h;
  check_eps(eps, "d_single_quad");
  const int nf = static_cast<int>(idx.size());
  std::vector<int> par(nf);
  int maxidx = 0;
  for (int p = 0; p < nf; p++)
  {
    par[p] = idx[p] % 2;
    maxidx = std::max(maxidx, idx[p]);
  }
  // Leg on [0,1] in xi = sin(phi).
  SeparableEval ea = [&](double phi, std::span<cd> f, cd g[2])
  {
    const cd x = eps * std::sin(phi);
    for (int p = 0; p < nf; p++)
    {
      const double b = pi * idx[p];
      f[p] = x / (x * x - b * b);
    }
    const cd e = std::exp(I * x);
    g[0] = 1.0 - e;
    g[1] = 1.0 + e;
  };
  const cd e2 = eps * eps;
  auto fill_b = [&](double s, std::span<cd> f, cd g[2], double jac)
  {
    for (int p = 0; p < nf; p++)
    {
      const double b = pi * idx[p];
      f[p] = s / (s * s + b * b);
    }
    const double e = std::exp(-s);
    const cd w = jac / sqrt_principal(e2 + s * s);
    g[0] = (1.0 - e) * w;
    g[1] = (1.0 + e) * w;
  };
  SeparableEval eb = [&](double s, std::span<cd> f, cd g[2]) { fill_b(s, f, g, 1.0); };
  std::vector<double> br = {0.0};
  const double ae = std::abs(eps);
  if (ae < 1.0)
  {
    br.push_back(ae);
  }
  br.push_back(std::max(1.0, ae));
  for (double b = pi; b < pi * maxidx * 2.0; b *= 2.0)
  {
    if (b > br.back())
    {
      br.push_back(b);
    }
  }
  const double a_tail = br.back();
  SeparableEval ec = [&](double u, std::span<cd> f, cd g[2])
  {
    const double s = a_tail / u;
    fill_b(s, f, g, a_tail / (u * u));
  };
  const TableResult ta = integrate_separable(ea, nf, par, {0.0, pi / 4.0, pi / 2.0}, cfg.rel_tol, cfg.abs_tol,
                                             cfg.max_subdivisions);
  const TableResult tb = integrate_separable(eb, nf, par, br, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const TableResult tc =
    integrate_separable(ec, nf, par, {0.0, 0.125, 0.25, 0.5, 1.0}, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (!ta.converged || !tb.converged || !tc.converged)
  {
    throw std::runtime_error("d_single_quad: kernel table quadrature did not converge");
  }
  error = ta.error + tb.error + tc.error;
  Eigen::MatrixXcd out = ta.value + I * (tb.value + tc.value);
  for (int p = 0; p < nf; p++)
  {
    for (int q = 0; q < nf; q++)
    {
      if ((idx[p] + idx[q]) % 2 != 0)
      {
        out(p, q) = 0.0;
        continue;
      }
      out(p, q) *= sign_pow((idx[p] - idx[q]) / 2);
      if (idx[p] == idx[q])
      {
        // Residue of the simple poles at +-pi m / eps picked up by the contour.
        const double b = pi * idx[p];
        out(p, q) -= I * pi / (4.0 * sqrt_principal(b * b - e2));
      }
    }
  }
  return out;
}

double asym_remainder(cd eps, int m, int n)
{
  const double e2 = std::norm(eps);
  const double lg = std::abs(std::log(eps));
  if (m == 0 && n == 0)
  {
    return e2 * lg;
  }
  if (m == 0 || n == 0)
  {
    const double j = std::max(m, n);
    return e2 * lg / (j * j);
  }
  const double w = (m == n) ? 1.0 / (2.0 * m * m) : (std::log(m) - std::log(n)) / (double(m) * m - double(n) * n);
  return (m % 2 == 0) ? e2 * w : e2 * lg * w;
}

}  // namespace

std::string to_string(Backend b)
{
  return b == Backend::asymptotic ? "asymptotic" : "quadrature";
}

std::string to_string(Parity p)
{
  return p == Parity::even ? "even" : "odd";
}

Backend backend_from_string(const std::string &s)
{
  if (s == "asymptotic")
  {
    return Backend::asymptotic;
  }
  if (s == "quadrature")
  {
    return Backend::quadrature;
  }
  throw std::invalid_argument("unknown kernel backend '" + s + "'");
}

void QuadratureConfig::validate() const
{
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
  {
    throw std::invalid_argument("quadrature: rel_tol and abs_tol must be positive");
  }
  if (!(tail_cut >= 10.0))
  {
    throw std::invalid_argument("quadrature: tail_cut must be at least 10");
  }
  if (max_subdivisions < 1)
  {
    throw std::invalid_argument("quadrature: max_subdivisions must be positive");
  }
}

double c0(double b, const QuadratureConfig &cfg)
{
  if (!(b >= pi))
  {
    throw std::domain_error("c0: requires b >= pi");
  }
  auto f = [b](double t)
  {
    const double num = (t < 1e-300) ? 1.0 : -std::expm1(-t) / t;
    return num / (t * t + b * b);
  };
  return real_integral(f, {0.0, 1.0, b}, b, cfg);
}

namespace
{

double c0_pm(double b, double b2, double sgn, const QuadratureConfig &cfg, const char *what)
{
  if (!(b >= pi) || !(b2 >= pi))
  {
    throw std::domain_error(std::string(what) + ": requires b, b' >= pi");
  }
  // Coincident arguments use the same integrand directly; nothing divides by b^2 - b'^2.
  auto f = [=](double t)
  {
    const double e = (sgn < 0.0) ? -std::expm1(-t) : 1.0 + std::exp(-t);
    return t * e / ((t * t + b * b) * (t * t + b2 * b2));
  };
  const double lo = std::min(b, b2), hi = std::max(b, b2);
  std::vector<double> br = {0.0, 1.0, lo};
  if (hi > lo)
  {
    br.push_back(hi);
  }
  return real_integral(f, br, hi, cfg);
}

}  // namespace

double c0_minus(double b, double b2, const QuadratureConfig &cfg)
{
  return c0_pm(b, b2, -1.0, cfg, "c0_minus");
}

double c0_plus(double b, double b2, const QuadratureConfig &cfg)
{
  return c0_pm(b, b2, 1.0, cfg, "c0_plus");
}

cd slit_wavenumber(cd k, double h, int n)
{
  const double b = pi * n / h;
  return sqrt_negim(k * k - b * b);
}

KernelValue d_single_asym(cd k, double h, int m, int n)
{
  check_index(m, "d_single_asym");
  check_index(n, "d_single_asym");
  check_width(h, "d_single_asym");
  const cd eps = k * h;
  if (std::abs(eps) > 0.3 || !(eps.real() > 0.0))
  {
    throw std::domain_error("d_single_asym: requires |kh| <= 0.3 and Re(kh) > 0");
  }
  KernelValue kv{m, n, 0.0, Backend::asymptotic, 0.0};
  if ((m + n) % 2 != 0)
  {
    return kv;
  }
  kv.accuracy_estimate = asym_remainder(eps, m, n);
  const double g = euler_gamma();
  if (m == 0 && n == 0)
  {
    kv.value = pi / 4.0 + 0.5 * I * (g - std::log(2.0) - 1.5) + 0.5 * I * std::log(eps);
  }
  else if (n == 0)
  {
    kv.value = I * sign_pow(m / 2) * c0(pi * m);
  }
  else if (m == 0)
  {
    kv.value = I * sign_pow(n / 2) * c0(pi * n);
  }
  else
  {
    const double c = (m % 2 == 0) ? c0_minus(pi * m, pi * n) : c0_plus(pi * m, pi * n);
    kv.value = I * sign_pow((m - n) / 2) * c;
    if (m == n)
    {
      kv.value -= I / (4.0 * m);
    }
  }
  return kv;
}

KernelValue d_single_quad(cd k, double h, int m, int n, const QuadratureConfig &cfg)
{
  check_index(m, "d_single_quad");
  check_index(n, "d_single_quad");
  check_width(h, "d_single_quad");
  cfg.validate();
  if ((m + n) % 2 != 0)
  {
    throw std::invalid_argument("d_single_quad: m + n must be even (the kernel vanishes otherwise)");
  }
  if (m == 0 && n == 0)
  {
    return d00_quad(k, h, cfg);
  }
  if (m == 0 || n == 0)
  {
    KernelValue kv = d0n_quad(k, h, std::max(m, n), cfg);
    kv.m = m;
    kv.n = n;
    return kv;
  }
  double err = 0.0;
  std::vector<int> idx = {m};
  if (n != m)
  {
    idx.push_back(n);
  }
  const Eigen::MatrixXcd t = positive_table(k, h, idx, cfg, err);
  return {m, n, t(0, idx.size() - 1), Backend::quadrature, err};
}

Eigen::MatrixXcd d_single_table_quad(cd k, double h, int M, const QuadratureConfig &cfg, double *error)
{
  check_index(M, "d_single_table_quad");
  check_width(h, "d_single_table_quad");
  cfg.validate();
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(M + 1, M + 1);
  double err = 0.0;
  const KernelValue d00 = d00_quad(k, h, cfg);
  d(0, 0) = d00.value;
  err = std::max(err, d00.accuracy_estimate);
  for (int n = 2; n <= M; n += 2)
  {
    const KernelValue kv = d0n_quad(k, h, n, cfg);
    d(0, n) = d(n, 0) = kv.value;
    err = std::max(err, kv.accuracy_estimate);
  }
  if (M >= 1)
  {
    std::vector<int> idx(M);
    for (int p = 0; p < M; p++)
    {
      idx[p] = p + 1;
    }
    double e = 0.0;
    d.bottomRightCorner(M, M) = positive_table(k, h, idx, cfg, e);
    err = std::max(err, e);
  }
  if (error)
  {
    *error = err;
  }
  return d;
}

Eigen::MatrixXcd d_single_table_asym(cd k, double h, int M)
{
  check_index(M, "d_single_table_asym");
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(M + 1, M + 1);
  for (int m = 0; m <= M; m++)
  {
    for (int n = m; n <= M; n += 2)
    {
      d(m, n) = d(n, m) = d_single_asym(k, h, m, n).value;
    }
  }
  return d;
}

cd path_mu(cd xi, cd k)
{
  // sqrt(xi - k) with its cut running up from k, sqrt(xi + k) with its cut running
  // down from -k; neither cut meets the deformed path, and i * (-i k) = k at xi = 0.
  const cd a = xi - k, b = xi + k;
  double arg_a = std::arg(a);
  if (arg_a > pi / 2.0)
  {
    arg_a -= 2.0 * pi;
  }
  double arg_b = std::arg(b);
  if (arg_b <= -pi / 2.0)
  {
    arg_b += 2.0 * pi;
  }
  const cd ra = std::polar(std::sqrt(std::abs(a)), 0.5 * arg_a);
  const cd rb = std::polar(std::sqrt(std::abs(b)), 0.5 * arg_b);
  return I * ra * rb;
}

PathGeometry make_path(cd k, const QuadratureConfig &cfg, double D)
{
  const double ak = std::abs(k);
  const double ik = std::abs(k.imag());
  PathGeometry p{};
  // The bumps multiply exp(i xi D) by up to exp(height |D|) while the kernel itself
  // grows like exp(|Im k| |D|); for wide offsets the clearance above |Im k| shrinks
  // so the cancellation stays bounded.
  const double auto_height =
    (D != 0.0) ? ik + std::min(std::max(0.5 * ak, 0.5 * ik), 4.0 / std::abs(D)) : std::max(0.5 * ak, 1.5 * ik);
  p.height = cfg.path_height > 0.0 ? cfg.path_height : auto_height;
  p.width = cfg.path_width > 0.0 ? cfg.path_width : 0.2 * ak;
  p.k_re = k.real();
  if (!(p.height > std::abs(k.imag())))
  {
    throw std::domain_error("d_cross_general: path_height must exceed |Im k|");
  }
  if (!(p.k_re > p.width))
  {
    throw std::domain_error("d_cross_general: bump width must stay below Re k");
  }
  p.t_end = p.k_re + 5.0 * p.width;
  return p;
}

cd PathGeometry::point(double t) const
{
  const double u = (t - k_re) / width, v = (t + k_re) / width;
  return {t, -height * std::exp(-u * u) + height * std::exp(-v * v)};
}

cd PathGeometry::tangent(double t) const
{
  const double u = (t - k_re) / width, v = (t + k_re) / width;
  return {1.0, 2.0 * height * u / width * std::exp(-u * u) - 2.0 * height * v / width * std::exp(-v * v)};
}

namespace
{

void check_offset(double h, double D, const char *what)
{
  check_width(h, what);
  if (!(std::abs(D) > h) || !std::isfinite(D))
  {
    throw std::domain_error(std::string(what) + ": requires |D| > h");
  }
}

Eigen::MatrixXcd cross_table_idx(cd k, double h, double D, const std::vector<int> &idx,
                                 const QuadratureConfig &cfg, double &error)
{
  check_offset(h, D, "d_cross_general");
  cfg.validate();
  const PathGeometry path = make_path(k, cfg, D);
  const int nf = static_cast<int>(idx.size());
  const std::vector<int> par(nf, 0);
  const double hh = h * h;
  auto fill = [&](cd xi, cd dxi, std::span<cd> f, cd g[2])
  {
    const cd arg = 0.5 * xi * h;
    for (int p = 0; p < nf; p++)
    {
      if (idx[p] == 0)
      {
        f[p] = (std::abs(arg) < 1e-8) ? 0.5 * h * (1.0 - arg * arg / 6.0) : std::sin(arg) / xi;
      }
      else
      {
        const double b = pi * idx[p] / h;
        f[p] = xi * std::sin(arg + 0.5 * pi * idx[p]) / (xi * xi - b * b);
      }
    }
    g[0] = g[1] = std::exp(I * xi * D) / (path_mu(xi, k) * hh) * dxi;
  };
  SeparableEval central = [&](double t, std::span<cd> f, cd g[2]) { fill(path.point(t), path.tangent(t), f, g); };
  const double kr = path.k_re, w = path.width, te = path.t_end;
  const std::vector<double> br = {-te, -kr - w, -kr, -kr + w, 0.0, kr - w, kr, kr + w, te};
  const double sgn = D > 0.0 ? 1.0 : -1.0;
  const double decay = std::abs(D) - h;
  const double umax = cfg.tail_cut / decay;
  std::vector<double> ubr = {0.0};
  for (double u = std::min(0.5, umax / 4.0); u < umax; u *= 2.0)
  {
    ubr.push_back(u);
  }
  ubr.push_back(umax);
  const cd zr = path.point(te), zl = path.point(-te);
  // Right tail runs outward, left tail inward; both vertical into the half plane
  // where e^{i xi D} decays.
  SeparableEval right = [&](double u, std::span<cd> f, cd g[2]) { fill(zr + I * sgn * u, I * sgn, f, g); };
  SeparableEval left = [&](double u, std::span<cd> f, cd g[2]) { fill(zl + I * sgn * u, -I * sgn, f, g); };
  const TableResult a = integrate_separable(central, nf, par, br, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const TableResult b = integrate_separable(right, nf, par, ubr, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  const TableResult c = integrate_separable(left, nf, par, ubr, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (!a.converged || !b.converged || !c.converged)
  {
    throw std::runtime_error("d_cross_general: path quadrature did not converge");
  }
  const Eigen::MatrixXcd out = a.value + b.value + c.value;
  // Truncated tails: the integrand has fallen by e^{-tail_cut} relative to its
  // size at the tail start.
  error = a.error + b.error + c.error + std::exp(-cfg.tail_cut) * out.cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

KernelValue d_cross_00(cd k, double h, double D, const QuadratureConfig &cfg, CrossRule rule)
{
  check_offset(h, D, "d_cross_00");
  cfg.validate();
  const double Deff = (rule == CrossRule::sommerfeld) ? std::abs(D) : D;
  const cd eps = k * h, x = k * Deff;
  auto f = [&](double tau) { return (1.0 - tau) * (hankel1_0(x + eps * tau) + hankel1_0(x - eps * tau)); };
  const QuadResult r = integrate(f, {0.0, 0.5, 1.0}, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
  if (!r.converged)
  {
    throw std::runtime_error("d_cross_00: quadrature did not converge");
  }
  return {0, 0, pi / 4.0 * r.value, Backend::quadrature, pi / 4.0 * r.error};
}

KernelValue d_cross_general(cd k, double h, int m, int n, double D, const QuadratureConfig &cfg)
{
  check_index(m, "d_cross_general");
  check_index(n, "d_cross_general");
  double err = 0.0;
  std::vector<int> idx = {m};
  if (n != m)
  {
    idx.push_back(n);
  }
  const Eigen::MatrixXcd t = cross_table_idx(k, h, D, idx, cfg, err);
  return {m, n, t(0, idx.size() - 1), Backend::quadrature, err};
}

Eigen::MatrixXcd d_cross_table(cd k, double h, double D, int M, const QuadratureConfig &cfg, double *error)
{
  check_index(M, "d_cross_table");
  std::vector<int> idx(M + 1);
  for (int p = 0; p <= M; p++)
  {
    idx[p] = p;
  }
  double err = 0.0;
  Eigen::MatrixXcd t = cross_table_idx(k, h, D, idx, cfg, err);
  if (error)
  {
    *error = err;
  }
  return t;
}

cd c_factor(cd k, double h, int m, int n, Parity parity)
{
  check_index(m, "c_factor");
  check_index(n, "c_factor");
  const double sigma = (parity == Parity::even) ? 1.0 : -1.0;
  const cd sm = slit_wavenumber(k, h, m);
  const cd pre = 4.0 * sm * h / pi;
  if (m == 0 && n == 0)
  {
    return pre;
  }
  const cd em = std::exp(I * sm);
  const cd qm = em - sigma;
  if (n == 0)
  {
    return qm * pre / std::sqrt(double(m));
  }
  const cd pn = std::exp(I * slit_wavenumber(k, h, n)) + sigma;
  if (m == 0)
  {
    return pre * std::sqrt(double(n)) / pn;
  }
  return pre * std::sqrt(double(n) / double(m)) * qm / pn;
}

KernelValue c_single(cd k, double h, int m, int n, Parity parity, Backend backend, const QuadratureConfig &cfg)
{
  check_index(m, "c_single");
  check_index(n, "c_single");
  KernelValue out{m, n, 0.0, backend, 0.0};
  if ((m + n) % 2 != 0)
  {
    return out;
  }
  const KernelValue d = (backend == Backend::asymptotic) ? d_single_asym(k, h, m, n) : d_single_quad(k, h, m, n, cfg);
  const cd f = c_factor(k, h, m, n, parity);
  out.value = f * d.value;
  out.accuracy_estimate = std::abs(f) * d.accuracy_estimate;
  return out;
}

KernelValue c_cross(cd k, double h, int m, int n, double D, Parity parity, Backend backend,
                    const QuadratureConfig &cfg, CrossRule rule)
{
  check_offset(h, D, "c_cross");
  KernelValue d{m, n, 0.0, backend, 0.0};
  const double e2 = std::norm(k * h);
  if (backend == Backend::asymptotic)
  {
    const double Deff = (rule == CrossRule::sommerfeld) ? std::abs(D) : D;
    if (m == 0 && n == 0)
    {
      d.value = pi / 4.0 * hankel1_0(k * Deff);
    }
    d.accuracy_estimate = e2;
  }
  else if (m == 0 && n == 0)
  {
    d = d_cross_00(k, h, D, cfg, rule);
  }
  else
  {
    d = d_cross_general(k, h, m, n, D, cfg);
  }
  const cd f = c_factor(k, h, m, n, parity);
  return {m, n, f * d.value, backend, std::abs(f) * d.accuracy_estimate};
}

}  // namespace slitres
