#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

namespace charfact::detail {

using cplx = std::complex<double>;

// sum_{k>=0} (q + k)^{-s} for integer s >= 2. Euler-Maclaurin after shifting
// q far enough into the right half plane.
cplx hurwitz_zeta(int s, cplx q);

inline cplx ldexp(cplx v, int e) { return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)}; }

// Keep |a|,|b| near 1 by moving powers of two into *exp.
inline void rescale(cplx& a, cplx& b, std::int64_t& exp) {
  double m = std::max({std::abs(a.real()), std::abs(a.imag()), std::abs(b.real()),
                       std::abs(b.imag())});
  if (!(m > 0.0) || !std::isfinite(m)) return;
  int k = 0;
  std::frexp(m, &k);
  if (k > 64 || k < -64) {
    a = ldexp(a, -k);
    b = ldexp(b, -k);
    exp += k;
  }
}

}  // namespace charfact::detail
