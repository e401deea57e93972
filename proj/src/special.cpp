#include "special.hpp"

#include <cmath>

#include "charfact/error.hpp"

namespace charfact::detail {

namespace {

// B_{2j} / (2j)!
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
};

}  // namespace

cplx hurwitz_zeta(int s, cplx q) {
  if (s < 2) throw DomainViolation("hurwitz_zeta needs s >= 2");
  const double target = 24.0 + std::abs(q.imag());
  long shift = 0;
  if (q.real() < target) shift = static_cast<long>(std::ceil(target - q.real()));
  cplx head = 0.0;
  for (long k = 0; k < shift; ++k) {
    cplx t = q + static_cast<double>(k);
    if (t == cplx(0.0)) throw DomainViolation("hurwitz_zeta: zero term");
    head += std::pow(t, -s);
  }
  const cplx a = q + static_cast<double>(shift);
  const cplx inv = 1.0 / a;
  cplx tail = std::pow(a, 1 - s) / static_cast<double>(s - 1) + 0.5 * std::pow(a, -s);
  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
  cplx power = std::pow(a, -s) * inv;  // a^{-s-1}
  double rising = s;                   // s
  for (int j = 1; j <= 10; ++j) {
    cplx term = kBernoulliOverFactorial[j - 1] * rising * power;
    tail += term;
    if (std::abs(term) <= 1e-18 * std::abs(tail)) break;
    rising *= static_cast<double>(s + 2 * j - 1) * static_cast<double>(s + 2 * j);
    power *= inv * inv;
  }
  return head + tail;
}

}  // namespace charfact::detail
