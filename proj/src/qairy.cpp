#include <cmath>
#include <limits>
#include <string>

#include "charfact/coupling.hpp"
#include "charfact/error.hpp"

namespace charfact {

namespace {

using combinat::ExactRational;

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainViolation("q must lie in (0,1), got " + format_number(q));
}

void check_q(const ExactRational& q) {
  if (!(q > 0 && q < 1)) throw DomainViolation("q must lie in (0,1), got " + combinat::to_string(q));
}

ExactRational rpow(const ExactRational& q, unsigned long long e) {
  ExactRational r = 1, b = q;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

template <class T>
std::vector<T> coefficients(const T& q, std::size_t count) {
  std::vector<T> g;
  T c = 1, qn = 1, q2n1 = q;  // q^n and q^{2n-1}
  for (std::size_t n = 1; n <= count; ++n) {
    qn *= q;
    c *= -q2n1 / (T(1) - qn);
    g.push_back(c);
    q2n1 *= q * q;
  }
  return g;
}

}  // namespace

EvalResult qairy(double q, cplx z, std::size_t terms) {
  check_q(q);
  cplx sum = 0.0, t = 1.0;
  double q2n1 = q, qn = 1.0;  // for the step from term n-1 to n
  const std::size_t cap = terms ? terms : 10000;
  std::size_t n = 0;
  double tail = std::numeric_limits<double>::infinity();
  for (; n < cap; ++n) {
    sum += t;
    // t_{n+1} = t_n q^{2n+1} (-z) / (1 - q^{n+1})
    qn *= q;
    const cplx next = t * q2n1 * (-z) / (1.0 - qn);
    const double ratio = q2n1 * q * q * std::abs(z) / (1.0 - qn * q);
    tail = ratio < 1.0 ? std::abs(next) / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    t = next;
    q2n1 *= q * q;
    if (!terms && tail <= 1e-17 * std::max(1.0, std::abs(sum))) {
      ++n;
      break;
    }
  }
  return {sum, tail, n};
}

Sequence qairy_sequence(double q, cplx w) {
  check_q(q);
  return Sequence::scaled(w * std::pow(q, -0.25), Sequence::geometric(q, 0.5));
}

std::vector<double> qairy_coefficients(double q, std::size_t count) {
  check_q(q);
  return coefficients(q, count);
}

std::vector<ExactRational> qairy_coefficients(const ExactRational& q, std::size_t count) {
  check_q(q);
  return coefficients(q, count);
}

double qairy_zeta(double q, unsigned N, const combinat::Limits& limits) {
  check_q(q);
  if (N == 0) throw DomainViolation("N must be >= 1");
  double s = 0.0;
  for (const auto& m : combinat::compositions(N, limits)) {
    s += combinat::to_double(combinat::alpha(m)) * std::pow(q, static_cast<double>(combinat::epsilon1(m)));
  }
  const double qN = std::pow(q, N);
  return N * qN / (1.0 - qN) * s;
}

ExactRational qairy_zeta(const ExactRational& q, unsigned N, const combinat::Limits& limits) {
  check_q(q);
  if (N == 0) throw DomainViolation("N must be >= 1");
  ExactRational s = 0;
  for (const auto& m : combinat::compositions(N, limits)) {
    s += combinat::alpha(m) * rpow(q, combinat::epsilon1(m));
  }
  const ExactRational qN = rpow(q, N);
  return ExactRational(N) * qN / (1 - qN) * s;
}

std::vector<double> qairy_zeta_recurrence(double q, std::size_t n) {
  const auto g = qairy_coefficients(q, n);
  return zeta_recurrence<double>(g);
}

std::vector<ExactRational> qairy_zeta_recurrence(const ExactRational& q, std::size_t n) {
  const auto g = qairy_coefficients(q, n);
  return zeta_recurrence<ExactRational>(g);
}

}  // namespace charfact
