// SPDX-License-Identifier: Apache-2.0

#ifndef SLITRES_SPECFUN_HPP
#define SLITRES_SPECFUN_HPP

#include <complex>

namespace slitres
{

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Euler-Mascheroni constant.
double euler_gamma();

// Square root with the cut on the negative real axis, arg(w) in (-pi/2, pi/2].
// A negative real input with a signed-zero imaginary part maps to +i sqrt(R).
cd sqrt_principal(cd z);

// Square root with the cut on the negative imaginary axis: arg(z) is taken in
// (-pi/2, 3pi/2]. Gives s_0 = k for k in the fourth quadrant and Im s_n > 0 for
// negative real arguments.
cd sqrt_negim(cd z);

// Bessel functions of order zero for complex argument, |z| <= 1e4. Y0 uses the
// principal branch of log(z/2). Both throw std::domain_error out of range.
cd bessel_j0(cd z);
cd bessel_y0(cd z);

// H0^(1). For Re z < 0 the continuation through the upper half plane is used,
// H0^(1)(z) = -(J0(w) - i Y0(w)) with w = -z.
cd hankel1_0(cd z);

namespace detail
{

// Exposed for overlap testing only.
cd j0_series(cd z);
cd y0_series(cd z);
cd j0_asymptotic(cd z);
cd y0_asymptotic(cd z);
inline constexpr double bessel_crossover = 17.0;

}  // namespace detail

}  // namespace slitres

#endif  // SLITRES_SPECFUN_HPP
