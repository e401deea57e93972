#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "charfact/sequence.hpp"

namespace charfact {

/// A value with an absolute bound on its truncation error. Rounding in the
/// underlying recurrences is not included.
struct EvalResult {
  cplx value{1.0, 0.0};
  double error_bound = 0.0;
  std::size_t terms_used = 0;
};

/// Truncation growth: start at `initial_terms`, double, give up past
/// `max_terms`.
struct TruncationPolicy {
  std::size_t initial_terms = 16;
  std::size_t max_terms = 1'000'000;

  /// Reads CHARFACT_MAX_TRUNCATION (positive integer) for max_terms.
  static TruncationPolicy from_environment();
};

/// mantissa * 2^exponent, with `error` in mantissa units. Used wherever
/// values over- or underflow binary64 (large coupling, large |z|).
struct ScaledValue {
  cplx mantissa{1.0, 0.0};
  std::int64_t exponent = 0;
  double error = 0.0;
  std::size_t terms_used = 0;

  cplx value() const;
  double error_bound() const;
  /// Sign of the real part if the error bound certifies it, else 0.
  int certain_sign() const;
};

/// 𝔉(x_1, ..., x_n) by the three-term determinant recurrence.
cplx f_finite(std::span<const cplx> x);
/// Same, given the pair products p_k = x_k x_{k+1} (k = 1..n-1).
cplx f_from_pairs(std::span<const cplx> pairs);

/// Incremental truncation of 𝔉(x). After advance(n) the first n terms are
/// folded into D_n, D_{n-1}; estimate() corrects for the tail to first order
/// and bounds what is left.
class TruncatedF {
 public:
  explicit TruncatedF(Sequence x);

  void advance(std::size_t n);
  std::size_t terms() const { return n_; }
  ScaledValue estimate() const;
  /// Raw D_n = 𝔉(x_1..x_n).
  cplx truncated_value() const;

 private:
  Sequence x_;
  std::size_t n_ = 1;
  cplx d_ = 1.0, d_prev_ = 1.0;  // D_n, D_{n-1}
  std::int64_t exp_ = 0;
};

EvalResult f_infinite(const Sequence& x, double tol,
                      const TruncationPolicy& policy = TruncationPolicy::from_environment());
ScaledValue f_infinite_scaled(const Sequence& x, double rel_tol,
                              const TruncationPolicy& policy = TruncationPolicy::from_environment());
/// Sign of Re 𝔉(x), growing the truncation until it is certified; 0 if the
/// policy runs out first.
int f_sign(const Sequence& x, const TruncationPolicy& policy = TruncationPolicy::from_environment(),
           std::size_t* terms_used = nullptr);

/// Principal log of 𝔉(x); requires Σ|x_k x_{k+1}| < log 2.
EvalResult log_f(const Sequence& x, double tol,
                 const TruncationPolicy& policy = TruncationPolicy::from_environment());

struct SeriesResult {
  cplx value{0.0, 0.0};
  /// bound on |log 𝔉(x) - value|
  double tail_bound = 0.0;
  /// Σ|x_k x_{k+1}| (or its bound, for infinite sequences)
  double pair_sum = 0.0;
  std::size_t terms_used = 0;
  std::vector<cplx> partial_sums;  // orders 1..N_max
};

/// Coefficients c_N = Σ_{m ∈ ℳ(N)} α(m) Σ_k Π_j p_{k+j-1}^{m_j}, N = 1..max_order
/// (index 0 unused), computed by dynamic programming over positions.
std::vector<cplx> log_coefficients(std::span<const cplx> pairs, int max_order);

/// log 𝔉 = -Σ_N c_N truncated at max_order. Requires Σ|x_k x_{k+1}| < 1.
SeriesResult log_f_series(std::span<const cplx> x, int max_order);
SeriesResult log_f_series(const Sequence& x, int max_order, double inner_tol = 1e-15,
                          const TruncationPolicy& policy = TruncationPolicy::from_environment());

}  // namespace charfact
