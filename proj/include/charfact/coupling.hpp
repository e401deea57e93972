#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "charfact/combinat.hpp"
#include "charfact/fcal.hpp"
#include "charfact/sequence.hpp"

namespace charfact {

/// f(w) = 𝔉(w x).
struct CouplingProblem {
  Sequence x;
  bool positivity = false;

  /// Checks x_k != 0 on the sample and a finite bound on Σ|x_k x_{k+1}|;
  /// positivity is set when every sampled term is real and positive.
  static CouplingProblem make(Sequence x, std::size_t sample = 1000);
};

/// a_k = v_k v_{k+1}, v_k the principal square root of x_k, k = 1..n.
std::vector<cplx> aux_offdiag(const CouplingProblem& P, std::size_t n);

EvalResult coupling_eval(const CouplingProblem& P, cplx w, double tol,
                         const TruncationPolicy& policy = TruncationPolicy::from_environment());

struct CouplingZeros {
  std::vector<double> zeta;        // ascending
  std::vector<double> enclosures;  // radius
  std::vector<bool> certified;     // sign change of f seen across the enclosure
  std::size_t count = 0;
  std::size_t truncation = 0;      // size of the final truncation of A
};

/// The `count` smallest positive zeros of f, as reciprocals of the largest
/// eigenvalues of truncations of A. Drift between sizes N and 2N is measured
/// relative to max(1, ζ).
CouplingZeros coupling_zeros(const CouplingProblem& P, std::size_t count, double tol,
                             const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// Π (1 - w²/ζ_k²) over the supplied zeros.
cplx product_eval(const CouplingZeros& zeros, cplx w);

struct ProductValue {
  cplx value{1.0, 0.0};
  cplx partial{1.0, 0.0};
  double tail_bound = 0.0;
};

/// Partial product times exp(-w² T), T = Σ_{k>K} ζ_k^{-2} (from the trace
/// identity). The bound covers the neglected higher powers of w²/ζ_k².
ProductValue product_eval(const CouplingZeros& zeros, cplx w, double tail_sum);

struct PowerSum {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;
  std::size_t truncation = 0;
};

/// n Σ_{m∈ℳ(n)} α(m) Σ_k Π_j (x_{k+j-1} x_{k+j})^{m_j} = Σ ζ_k^{-2n}. The
/// k-sum is truncated until the tail bound drops below tol.
PowerSum power_sum(const CouplingProblem& P, unsigned n, double tol = 1e-13,
                   const TruncationPolicy& policy = TruncationPolicy::from_environment(),
                   const combinat::Limits& limits = {});

/// Σ_{k>K} ζ_k^{-2} = Σ x_k x_{k+1} - Σ_{k<=K} ζ_k^{-2}.
PowerSum trace_tail(const CouplingProblem& P, const CouplingZeros& zeros, double tol = 1e-13);

/// power_sum(P, N)^{-1/(2N)}; increases toward ζ_1.
PowerSum smallest_root_estimate(const CouplingProblem& P, unsigned N, double tol = 1e-13);

/// σ(2), ..., σ(2n) from g_1..g_n, the coefficients of Π(1 - z/ζ_k²).
template <class T>
std::vector<T> zeta_recurrence(std::span<const T> g) {
  std::vector<T> sigma;
  for (std::size_t n = 1; n <= g.size(); ++n) {
    T s = -T(static_cast<long>(n)) * g[n - 1];
    for (std::size_t k = 1; k < n; ++k) s -= g[n - k - 1] * sigma[k - 1];
    sigma.push_back(s);
  }
  return sigma;
}

/// (-1)^k Γ(ν+1) / (4^k k! Γ(ν+k+1)), k = 1..n: the coefficients of
/// Γ(ν+1)(2/√z)^ν J_ν(√z) = Π (1 - z/j_{ν,k}²).
std::vector<double> bessel_product_coefficients(double nu, std::size_t n);

/// J_ν(2w) = (w^ν / Γ(ν+1)) 𝔉({w/(ν+k)}).
EvalResult bessel_F(double nu, double w, double tol,
                    const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// σ_ν(2N) = Σ j_{ν,k}^{-2N} = 2^{-2N} power_sum({1/(k+ν)}, N).
PowerSum rayleigh_sigma(double nu, unsigned N, double tol = 1e-13);

// ---- q-Airy -------------------------------------------------------------------

/// A_q(z) = Σ q^{n²} (-z)^n / (q;q)_n. terms = 0 sums until the tail bound
/// is below 1e-17 relative to the partial sum.
EvalResult qairy(double q, cplx z, std::size_t terms = 0);

/// x_k = w q^{(2k-1)/4}, so that 𝔉(x) = A_q(w²).
Sequence qairy_sequence(double q, cplx w = 1.0);

/// (-1)^n q^{n²} / (q;q)_n, n = 1..count.
std::vector<double> qairy_coefficients(double q, std::size_t count);
std::vector<combinat::ExactRational> qairy_coefficients(const combinat::ExactRational& q, std::size_t count);

/// D_N(q) = Σ ι_k^{-N} = (N q^N / (1 - q^N)) Σ_{m∈ℳ(N)} α(m) q^{ε₁(m)}.
double qairy_zeta(double q, unsigned N, const combinat::Limits& limits = {});
combinat::ExactRational qairy_zeta(const combinat::ExactRational& q, unsigned N, const combinat::Limits& limits = {});

/// D_1..D_n by the logarithmic-derivative recurrence.
std::vector<double> qairy_zeta_recurrence(double q, std::size_t n);
std::vector<combinat::ExactRational> qairy_zeta_recurrence(const combinat::ExactRational& q, std::size_t n);

}  // namespace charfact
