#include "charfact/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "charfact/error.hpp"
#include "charfact/oracle.hpp"

namespace charfact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx ipow(cplx v, unsigned e) {
  cplx r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= v;
  return r;
}

double central_binomial_half(unsigned n) {
  // C(2n, n) / 2
  double c = 1.0;
  for (unsigned k = 1; k <= n; ++k) c = c * (n + k) / k;
  return c / 2.0;
}

// Chains starting beyond K contribute at most this much to n Σ α Σ_k Π p^m.
double power_sum_tail(const Sequence& x, std::size_t K, unsigned n) {
  const double tau = x.pair_tail_bound(K + 1);
  if (!std::isfinite(tau)) return kInf;
  const double sup = x.pair_sup_bound(K + 1);
  double b = std::pow(tau, n);
  if (std::isfinite(sup)) b = std::min(b, central_binomial_half(n) * std::pow(sup, n - 1) * tau);
  return b;
}

}  // namespace

CouplingProblem CouplingProblem::make(Sequence x, std::size_t sample) {
  CouplingProblem P;
  std::size_t limit = sample;
  if (auto len = x.length()) limit = std::min(limit, *len);
  bool positive = true;
  for (std::size_t k = 1; k <= limit; ++k) {
    const cplx v = x.term(k);
    if (v == cplx(0.0)) throw DomainViolation("x_" + std::to_string(k) + " is zero");
    positive = positive && v.imag() == 0.0 && v.real() > 0.0;
  }
  if (!std::isfinite(x.pair_tail_bound(1))) {
    throw DomainViolation("no finite bound on sum |x_k x_{k+1}| for " + x.str());
  }
  P.x = std::move(x);
  P.positivity = positive;
  return P;
}

std::vector<cplx> aux_offdiag(const CouplingProblem& P, std::size_t n) {
  std::vector<cplx> a;
  a.reserve(n);
  cplx v_prev = std::sqrt(P.x.term(1));
  for (std::size_t k = 1; k <= n; ++k) {
    const cplx v = std::sqrt(P.x.term(k + 1));
    a.push_back(v_prev * v);
    v_prev = v;
  }
  return a;
}

EvalResult coupling_eval(const CouplingProblem& P, cplx w, double tol, const TruncationPolicy& policy) {
  if (w == cplx(0.0)) return {1.0, 0.0, 0};
  return f_infinite(Sequence::scaled(w, P.x), tol, policy);
}

CouplingZeros coupling_zeros(const CouplingProblem& P, std::size_t count, double tol,
                             const TruncationPolicy& policy) {
  if (!P.positivity) throw PositivityRequired("coupling_zeros needs x_k > 0");
  if (!(tol > 0.0)) throw DomainViolation("tol must be positive");
  CouplingZeros out;
  out.count = count;
  if (count == 0) return out;

  // ζ_1..ζ_count from the `count` largest eigenvalues of A_N.
  auto zeros_at = [&](std::size_t N) {
    oracle::TridiagMatrix m;
    m.diag.assign(N, 0.0);
    for (const cplx& a : aux_offdiag(P, N - 1)) m.offdiag.push_back(a.real());
    std::vector<double> mu = oracle::tridiag_eigen_range(m, N - count, N - 1, 1e-300, 4e-16);
    std::vector<double> z;
    for (auto it = mu.rbegin(); it != mu.rend(); ++it) {
      if (!(*it > 0.0)) {
        throw NotEnoughZeros("only " + std::to_string(z.size()) + " positive zeros available");
      }
      z.push_back(1.0 / *it);
    }
    return z;
  };

  std::vector<double> zeta, drift(count, 0.0);
  if (auto len = P.x.length()) {
    if (2 * count > *len) {
      throw NotEnoughZeros("a list of length " + std::to_string(*len) + " has at most " +
                           std::to_string(*len / 2) + " positive zeros");
    }
    zeta = zeros_at(*len);
    out.truncation = *len;
  } else {
    std::size_t N = std::max<std::size_t>(64, 4 * count);
    N += N % 2;
    std::vector<double> prev = zeros_at(N);
    for (;;) {
      if (2 * N > policy.max_terms) {
        throw NonConvergent("coupling zeros still drift at truncation " + std::to_string(N));
      }
      std::vector<double> next = zeros_at(2 * N);
      double worst = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        drift[i] = std::abs(next[i] - prev[i]) / std::max(1.0, next[i]);
        worst = std::max(worst, drift[i]);
      }
      N *= 2;
      prev = std::move(next);
      if (worst < tol / 10.0) break;
    }
    zeta = std::move(prev);
    out.truncation = N;
  }

  // Polish: look for the expected sign change of f across ζ ± h. Signs
  // alternate starting from f(0) = 1, which catches rounding failures.
  TruncationPolicy capped = policy;
  capped.max_terms = std::min<std::size_t>(policy.max_terms, std::size_t{1} << 16);
  for (std::size_t i = 0; i < count; ++i) {
    const double scale = std::max(1.0, zeta[i]);
    const double h = 0.5 * tol * scale;
    const int expect = i % 2 == 0 ? 1 : -1;
    const int below = f_sign(Sequence::scaled(zeta[i] - h, P.x), capped);
    const int above = f_sign(Sequence::scaled(zeta[i] + h, P.x), capped);
    const bool ok = below == expect && above == -expect;
    out.zeta.push_back(zeta[i]);
    out.certified.push_back(ok);
    out.enclosures.push_back(ok ? h : std::max(drift[i], tol) * scale);
  }
  return out;
}

cplx product_eval(const CouplingZeros& zeros, cplx w) {
  cplx p = 1.0;
  const cplx w2 = w * w;
  for (double z : zeros.zeta) p *= 1.0 - w2 / (z * z);
  return p;
}

ProductValue product_eval(const CouplingZeros& zeros, cplx w, double tail_sum) {
  ProductValue out;
  out.partial = product_eval(zeros, w);
  out.value = out.partial * std::exp(-w * w * tail_sum);
  if (zeros.zeta.empty()) {
    out.tail_bound = kInf;
    return out;
  }
  // |log(1-u) + u| <= |u|²/(2(1-|u|)) with u = w²/ζ_k², ζ_k >= ζ_K for k > K.
  const double zK = zeros.zeta.back();
  const double rho = std::norm(w) / (zK * zK);
  if (!(rho < 1.0)) {
    out.tail_bound = kInf;
    return out;
  }
  const double w4 = std::norm(w) * std::norm(w);
  out.tail_bound = std::abs(out.value) * std::expm1(0.5 * w4 * tail_sum / (zK * zK) / (1.0 - rho));
  return out;
}

PowerSum power_sum(const CouplingProblem& P, unsigned n, double tol, const TruncationPolicy& policy,
                   const combinat::Limits& limits) {
  if (n == 0) throw DomainViolation("power sum order must be >= 1");
  const auto comps = combinat::compositions(n, limits);
  std::vector<double> alpha;
  alpha.reserve(comps.size());
  for (const auto& m : comps) alpha.push_back(combinat::to_double(combinat::alpha(m)));

  const Sequence& x = P.x;
  std::size_t K = 0;  // chains start at k = 1..K
  double tail = 0.0;
  const auto len = x.length();
  std::optional<cplx> exact_tail;
  if (len) {
    K = *len > 1 ? *len - 1 : 0;
  } else {
    K = std::max<std::size_t>(policy.initial_terms, 64);
    if (n == 1) exact_tail = x.pair_tail_sum(K + 1);
    if (!exact_tail) {
      tail = power_sum_tail(x, K, n);
      while (tail > tol && K < policy.max_terms) {
        K = std::min(2 * K, policy.max_terms);
        tail = power_sum_tail(x, K, n);
      }
    }
  }
  const std::size_t npairs = len ? K : K + n;
  std::vector<cplx> p(npairs + 1, 0.0);
  for (std::size_t k = 1; k <= npairs; ++k) p[k] = x.pair(k);

  cplx total = 0.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& parts = comps[c].parts();
    cplx inner = 0.0;
    // Smallest terms first.
    for (std::size_t k = K; k >= 1; --k) {
      if (k + parts.size() - 1 > npairs) continue;
      cplx prod = 1.0;
      for (std::size_t j = 0; j < parts.size(); ++j) prod *= ipow(p[k + j], parts[j]);
      inner += prod;
    }
    total += alpha[c] * inner;
  }
  PowerSum out;
  out.value = static_cast<double>(n) * total;
  if (exact_tail) out.value += *exact_tail;
  out.tail_bound = tail;
  out.truncation = K;
  return out;
}

PowerSum trace_tail(const CouplingProblem& P, const CouplingZeros& zeros, double tol) {
  PowerSum s = power_sum(P, 1, tol);
  double sum = 0.0, comp = 0.0, err = s.tail_bound;
  for (std::size_t i = 0; i < zeros.zeta.size(); ++i) {
    const double z = zeros.zeta[i];
    const double y = 1.0 / (z * z) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err += 2.0 * zeros.enclosures[i] / (z * z * z);
  }
  s.value -= sum;
  s.tail_bound = err;
  return s;
}

PowerSum smallest_root_estimate(const CouplingProblem& P, unsigned N, double tol) {
  if (!P.positivity) throw PositivityRequired("smallest_root_estimate needs x_k > 0");
  PowerSum s = power_sum(P, N, tol);
  const double v = s.value.real();
  if (!(v > 0.0)) throw DomainViolation("power sum is not positive");
  PowerSum out = s;
  out.value = std::pow(v, -1.0 / (2.0 * N));
  out.tail_bound = out.value.real() / (2.0 * N * v) * s.tail_bound;
  return out;
}

std::vector<double> bessel_product_coefficients(double nu, std::size_t n) {
  std::vector<double> g;
  double c = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    c *= -1.0 / (4.0 * static_cast<double>(k) * (nu + static_cast<double>(k)));
    g.push_back(c);
  }
  return g;
}

EvalResult bessel_F(double nu, double w, double tol, const TruncationPolicy& policy) {
  if (!(nu > -1.0)) throw DomainViolation("bessel_F needs nu > -1");
  const bool integer = nu == std::floor(nu);
  if (w < 0.0 && !integer) throw DomainViolation("w^nu is not real for w < 0 and non-integer nu");
  if (w == 0.0) {
    if (nu == 0.0) return {1.0, 0.0, 0};
    if (nu > 0.0) return {0.0, 0.0, 0};
    throw DomainViolation("J_nu(0) is infinite for nu < 0");
  }
  const double pre = std::pow(w, nu) / std::tgamma(nu + 1.0);
  const double ptol = tol / std::max(std::abs(pre), 1e-300);
  EvalResult f = f_infinite(Sequence::scaled(w, Sequence::reciprocal(nu)), ptol, policy);
  return {pre * f.value.real(), std::abs(pre) * f.error_bound, f.terms_used};
}

PowerSum rayleigh_sigma(double nu, unsigned N, double tol) {
  if (!(nu > -1.0)) throw DomainViolation("rayleigh_sigma needs nu > -1");
  const double scale = std::ldexp(1.0, -2 * static_cast<int>(N));
  CouplingProblem P = CouplingProblem::make(Sequence::reciprocal(nu));
  PowerSum s = power_sum(P, N, tol / scale);
  s.value *= scale;
  s.tail_bound *= scale;
  return s;
}

}  // namespace charfact
