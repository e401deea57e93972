#include "charfact/oracle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "charfact/error.hpp"

namespace charfact::oracle {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

cplx chain_sum(std::span<const cplx> x, std::size_t start, std::size_t depth_left) {
  // Σ over chains k_1 >= start, k_{j+1} >= k_j + 2 of -x_k x_{k+1} * (rest)
  cplx s = 0.0;
  if (depth_left == 0) return s;
  for (std::size_t k = start; k + 1 < x.size(); ++k) {
    cplx p = x[k] * x[k + 1];
    s += -p * (1.0 + chain_sum(x, k + 2, depth_left - 1));
  }
  return s;
}

double pivmin(const TridiagMatrix& m) {
  double e2 = 1.0;
  for (double e : m.offdiag) e2 = std::max(e2, e * e);
  return DBL_MIN * e2;
}

std::pair<double, double> gershgorin(const TridiagMatrix& m) {
  double lo = INFINITY, hi = -INFINITY;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(m.offdiag[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  double pad = 2.0 * DBL_EPSILON * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
  return {lo - pad, hi + pad};
}

}  // namespace

cplx f_multisum(std::span<const cplx> x, std::size_t max_order) {
  if (x.size() > 20) {
    throw ResourceLimit("f_multisum limited to 20 terms, got " + std::to_string(x.size()));
  }
  return 1.0 + chain_sum(x, 0, max_order);
}

std::size_t sturm_count(const TridiagMatrix& m, double x) {
  const double pmin = pivmin(m);
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double e2 = i > 0 ? m.offdiag[i - 1] * m.offdiag[i - 1] : 0.0;
    q = m.diag[i] - x - (i > 0 ? e2 / q : 0.0);
    if (std::abs(q) < pmin) q = -pmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiag_eigen_range(const TridiagMatrix& m, std::size_t first,
                                        std::size_t last, double abs_tol, double rel_tol) {
  std::vector<double> out;
  const std::size_t n = m.size();
  if (n == 0 || first > last) return out;
  if (last >= n) throw DomainViolation("eigenvalue index out of range");
  if (m.offdiag.size() + 1 != n) throw DomainViolation("offdiag must have size n-1");
  const auto [glo, ghi] = gershgorin(m);
  for (std::size_t i = first; i <= last; ++i) {
    double lo = glo, hi = ghi;
    // Reuse the previous eigenvalue as a lower bracket.
    if (!out.empty()) lo = std::max(lo, out.back() - abs_tol - rel_tol * std::abs(out.back()));
    if (sturm_count(m, lo) > i) lo = glo;
    for (int it = 0; it < 2000; ++it) {
      double mid = 0.5 * (lo + hi);
      double width = hi - lo;
      double scale = std::max(std::abs(lo), std::abs(hi));
      if (width <= std::max(abs_tol, rel_tol * scale) || mid <= lo || mid >= hi) break;
      if (sturm_count(m, mid) > i) hi = mid;
      else lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<double> tridiag_eigen(const TridiagMatrix& m, double abs_tol) {
  if (m.size() == 0) return {};
  return tridiag_eigen_range(m, 0, m.size() - 1, abs_tol, 0.0);
}

cplx charpoly_direct(const TridiagMatrix& m, cplx z) {
  cplx p_prev = 1.0, p = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double e2 = i > 0 ? m.offdiag[i - 1] * m.offdiag[i - 1] : 0.0;
    cplx next = (m.diag[i] - z) * p - e2 * p_prev;
    p_prev = p;
    p = next;
  }
  return p;
}

cplx dense_determinant(std::vector<std::vector<cplx>> a) {
  const std::size_t n = a.size();
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == cplx(0.0)) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      cplx f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

double bessel_series(double nu, double z, double tol) {
  const bool integer_order = nu == std::floor(nu);
  if (z < 0.0 && !integer_order) throw DomainViolation("bessel_series: z < 0 needs integer order");
  // Terms with ν + k + 1 a non-positive integer vanish.
  std::size_t k0 = 0;
  if (integer_order && nu < 0.0) k0 = static_cast<std::size_t>(-nu);
  const Real half = Real(z) / 2;
  const Real x2 = half * half;
  const Real a = Real(nu) + Real(k0);  // exponent 2k0 + ν
  Real term;
  if (z == 0.0) {
    if (a > 0) return 0.0;
    if (a == 0) return 1.0 / boost::math::tgamma(Real(k0 + 1)).convert_to<double>() *
                       ((k0 % 2) ? -1.0 : 1.0);
    throw DomainViolation("bessel_series: singular at z = 0");
  }
  term = boost::multiprecision::pow(half, Real(nu) + 2 * Real(k0)) /
         (boost::math::tgamma(Real(k0 + 1)) * boost::math::tgamma(Real(nu) + Real(k0) + 1));
  if (k0 % 2) term = -term;
  Real sum = term;
  for (std::size_t k = k0 + 1; k < 100000; ++k) {
    term *= -x2 / (Real(k) * (Real(nu) + Real(k)));
    sum += term;
    if (Real(k) > Real(z) && boost::multiprecision::abs(term) <= Real(tol) * 1e-3) break;
  }
  return sum.convert_to<double>();
}

double digamma(double x) { return boost::math::digamma(x); }

double bessel_c(double w) {
  const Real w2 = Real(w) * Real(w);
  Real term = 1, sum = 0;
  for (std::size_t k = 0; k < 100000; ++k) {
    if (k > 0) term *= -w2 / (Real(k) * Real(k));
    Real add = term * boost::math::digamma(Real(k + 1));
    sum += add;
    if (Real(k) > 2 * Real(w) && boost::multiprecision::abs(add) < Real(1e-30)) break;
  }
  return sum.convert_to<double>() / bessel_series(0.0, 2.0 * w);
}

std::vector<double> bessel_j0_zeros(std::size_t count) {
  if (count > 20) throw ResourceLimit("bessel_j0_zeros: the series oracle is limited to 20 zeros");
  std::vector<double> out;
  const double step = 0.1;
  double a = 0.0, fa = 1.0;
  while (out.size() < count) {
    double b = a + step, fb = bessel_series(0.0, b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi), fm = bessel_series(0.0, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return out;
}

double bessel_zero_mcmahon(double nu, std::size_t k) {
  const double mu = 4.0 * nu * nu;
  const double beta = (static_cast<double>(k) + 0.5 * nu - 0.25) * M_PI;
  const double b8 = 8.0 * beta;
  return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(b8, 3)) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * std::pow(b8, 5));
}

double bessel_zero_tail(double nu, std::size_t K, int p) {
  const std::size_t M = K + 200000;
  double s = 0.0;
  for (std::size_t k = M; k > K; --k) s += std::pow(bessel_zero_mcmahon(nu, k), -p);
  const double t0 = static_cast<double>(M) + 0.5 + 0.5 * nu - 0.25;
  s += std::pow(M_PI, -p) * std::pow(t0, 1 - p) / (p - 1);
  return s;
}

}  // namespace charfact::oracle
