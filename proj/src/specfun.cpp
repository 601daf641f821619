// SPDX-License-Identifier: Apache-2.0

#include "slitres/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace slitres
{

namespace
{

using cld = std::complex<long double>;

constexpr double max_bessel_arg = 1.0e4;

void check_arg(cd z, const char *name)
{
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
  {
    throw std::domain_error(std::string(name) + ": non-finite argument");
  }
  if (std::abs(z) > max_bessel_arg)
  {
    throw std::domain_error(std::string(name) + ": |z| exceeds validated range 1e4");
  }
}

// Hankel expansion sums sum_k (+-i)^k a_k / z^k, truncated at the smallest term.
void hankel_sums(cd z, cd &s1, cd &s2)
{
  s1 = 1.0;
  s2 = 1.0;
  cd t = 1.0;  // a_k / z^k
  cd ik = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; k++)
  {
    const double odd = 2.0 * k - 1.0;
    t *= -(odd * odd) / (8.0 * k * z);
    const double mag = std::abs(t);
    if (mag > last)
    {
      break;
    }
    last = mag;
    ik *= cd(0.0, 1.0);
    s1 += ik * t;
    s2 += std::conj(ik) * t;
    if (mag < 1.0e-18)
    {
      break;
    }
  }
}

}  // namespace

double euler_gamma()
{
  return 0.57721566490153286061;
}

cd sqrt_principal(cd z)
{
  // Treat a signed zero imaginary part as +0 so that sqrt(-R) = +i sqrt(R).
  const double im = (z.imag() == 0.0) ? 0.0 : z.imag();
  return std::sqrt(cd(z.real(), im));
}

cd sqrt_negim(cd z)
{
  const double re = z.real();
  const double im = (z.imag() == 0.0) ? 0.0 : z.imag();
  cd w = std::sqrt(cd(re, im));
  // Third quadrant (and the negative imaginary axis itself) lies at arg in
  // (pi, 3pi/2] on this branch, so flip the principal root.
  if (im < 0.0 && re <= 0.0)
  {
    w = -w;
  }
  return w;
}

namespace detail
{

cd j0_series(cd z)
{
  const cld q = cld(z.real(), z.imag()) * cld(z.real(), z.imag()) / 4.0L;
  cld term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 300; k++)
  {
    term *= -q / static_cast<long double>(k * k);
    sum += term;
    if (std::abs(term) < 1.0e-21L * std::abs(sum) && k > 2)
    {
      break;
    }
  }
  return cd(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

cd y0_series(cd z)
{
  const cld zl(z.real(), z.imag());
  const cld q = zl * zl / 4.0L;
  cld term = 1.0L, j0 = 1.0L, corr = 0.0L;
  long double harm = 0.0L;
  for (int k = 1; k < 300; k++)
  {
    term *= -q / static_cast<long double>(k * k);
    harm += 1.0L / k;
    j0 += term;
    corr -= harm * term;
    if (std::abs(term) * (1.0L + harm) < 1.0e-21L * (std::abs(j0) + std::abs(corr)) && k > 2)
    {
      break;
    }
  }
  const cld lg = std::log(zl / 2.0L);
  const long double two_pi = 2.0L / 3.14159265358979323846264338327950288L;
  const cld y = two_pi * ((lg + static_cast<long double>(euler_gamma())) * j0 + corr);
  return cd(static_cast<double>(y.real()), static_cast<double>(y.imag()));
}

// Both asymptotic forms assume Re z > 0.
cd j0_asymptotic(cd z)
{
  cd s1, s2;
  hankel_sums(z, s1, s2);
  const cd c = std::sqrt(2.0 / (pi * z));
  const cd chi = z - pi / 4.0;
  const cd e1 = std::exp(cd(0.0, 1.0) * chi), e2 = std::exp(cd(0.0, -1.0) * chi);
  return 0.5 * c * (e1 * s1 + e2 * s2);
}

cd y0_asymptotic(cd z)
{
  cd s1, s2;
  hankel_sums(z, s1, s2);
  const cd c = std::sqrt(2.0 / (pi * z));
  const cd chi = z - pi / 4.0;
  const cd e1 = std::exp(cd(0.0, 1.0) * chi), e2 = std::exp(cd(0.0, -1.0) * chi);
  return c * (e1 * s1 - e2 * s2) / cd(0.0, 2.0);
}

}  // namespace detail

cd bessel_j0(cd z)
{
  check_arg(z, "bessel_j0");
  if (std::abs(z) <= detail::bessel_crossover)
  {
    return detail::j0_series(z);
  }
  // J0 is even.
  return detail::j0_asymptotic(z.real() >= 0.0 ? z : -z);
}

cd bessel_y0(cd z)
{
  check_arg(z, "bessel_y0");
  if (z == cd(0.0, 0.0))
  {
    throw std::domain_error("bessel_y0: logarithmic singularity at z = 0");
  }
  if (std::abs(z) <= detail::bessel_crossover)
  {
    return detail::y0_series(z);
  }
  if (z.real() > 0.0)
  {
    return detail::y0_asymptotic(z);
  }
  // Principal branch: log(z/2) = log(w/2) + i pi s with w = -z.
  const cd w = -z;
  const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
  return detail::y0_asymptotic(w) + cd(0.0, 2.0 * s) * detail::j0_asymptotic(w);
}

cd hankel1_0(cd z)
{
  check_arg(z, "hankel1_0");
  if (z == cd(0.0, 0.0))
  {
    throw std::domain_error("hankel1_0: singular at z = 0");
  }
  const cd i(0.0, 1.0);
  if (z.real() >= 0.0)
  {
    return bessel_j0(z) + i * bessel_y0(z);
  }
  const cd w = -z;
  return -(bessel_j0(w) - i * bessel_y0(w));
}

}  // namespace slitres
