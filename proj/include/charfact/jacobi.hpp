#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charfact/fcal.hpp"
#include "charfact/oracle.hpp"
#include "charfact/sequence.hpp"

namespace charfact {

struct JacobiFlags {
  bool lambda_positive_divergent = false;
  bool square_summable_inverse = false;
};

/// Real Jacobi matrix with diagonal λ_n and off-diagonal w_n.
class JacobiSpec {
 public:
  /// Checks realness and w_n != 0 on the first `sample` indices.
  JacobiSpec(Sequence lambda, Sequence w, JacobiFlags flags = {}, std::size_t sample = 1000);

  /// Sets the flags after checking λ_n > 0 on the sample and finiteness of
  /// Σ λ_n^{-2} and Σ w_n^2/(λ_n λ_{n+1}) from the tail bounds.
  static JacobiSpec certified(Sequence lambda, Sequence w, std::size_t sample = 1000);

  const Sequence& lambda() const { return lambda_; }
  const Sequence& w() const { return w_; }
  const JacobiFlags& flags() const { return flags_; }
  bool regular() const { return flags_.lambda_positive_divergent && flags_.square_summable_inverse; }

  /// {γ_n^2 / (λ_n - z)}, whose pair products are w_n^2 / ((λ_n - z)(λ_{n+1} - z)).
  Sequence argument(cplx z) const;
  /// J + eps I
  JacobiSpec shifted(double eps) const;
  oracle::TridiagMatrix truncation(std::size_t n) const;
  std::string str() const;

 private:
  Sequence lambda_, w_;
  JacobiFlags flags_;
};

/// γ_1..γ_n with γ_1 = 1 and γ_k γ_{k+1} = w_k.
std::vector<double> gamma_sequence(const Sequence& w, std::size_t n);

struct EvalOptions {
  TruncationPolicy policy = TruncationPolicy::from_environment();
  /// z closer than this to a diagonal entry is reported as a pole
  double pole_distance = 1e-9;
};

/// F_J(z) = 𝔉({γ_n^2/(λ_n - z)}).
EvalResult char_function(const JacobiSpec& J, cplx z, double tol, const EvalOptions& opts = {});

/// Φ_λ(z) = Π (1 - z/λ_n) e^{z/λ_n}.
EvalResult phi_lambda(const Sequence& lambda, cplx z, double tol,
                      const TruncationPolicy& policy = TruncationPolicy::from_environment());

/// Incremental truncation of H_J(z) = Φ_λ(z) F_J(z) that never divides by
/// λ_n - z for n inside the truncation: it runs the recurrence for
/// det(J_n - z) / Π λ_k and keeps the exponential factor separately.
class TruncatedH {
 public:
  TruncatedH(const JacobiSpec& J, cplx z);
  void advance(std::size_t n);
  std::size_t terms() const { return n_; }
  ScaledValue estimate() const;

 private:
  const JacobiSpec* J_;
  Sequence arg_;
  cplx z_;
  std::size_t n_ = 1;
  cplx s_ = 1.0, s_prev_ = 1.0;  // S_n, S_{n-1}
  std::int64_t exp_ = 0;
  cplx inv_sum_ = 0.0, inv_comp_ = 0.0;  // Σ 1/λ_k with compensation
};

EvalResult regularized_char(const JacobiSpec& J, cplx z, double tol,
                            const TruncationPolicy& policy = TruncationPolicy::from_environment());
/// H_J(z) to relative accuracy rel_tol, as mantissa * 2^exponent.
ScaledValue regularized_char_scaled(const JacobiSpec& J, cplx z, double rel_tol,
                                    const TruncationPolicy& policy = TruncationPolicy::from_environment());
/// H_J(x) for real x, with the truncation grown only until the sign is
/// certain. certain_sign() of the result is 0 if the policy ran out.
ScaledValue regularized_char_sign(const JacobiSpec& J, double x,
                                  const TruncationPolicy& policy = TruncationPolicy::from_environment());

// ---- det₂ path ------------------------------------------------------------

/// a_0..a_M from traces = (Tr A^2, ..., Tr A^M).
std::vector<cplx> det2_coefficients(std::span<const cplx> traces);

/// Tr A^p for p = 1..max_power of the complex symmetric tridiagonal A.
std::vector<cplx> tridiagonal_power_traces(std::span<const cplx> diag, std::span<const cplx> offdiag,
                                           int max_power);

struct Det2Result {
  cplx value{1.0, 0.0};
  std::vector<cplx> coefficients;  // a_0..a_M
  std::vector<cplx> partial_sums;  // Σ_{m<=M'} a_m / m!, M' = 0..M
  std::size_t truncation = 0;
};

/// det₂(I + L^{-1/2}(W + W* - z)L^{-1/2}) on the first `truncation` rows via
/// the Plemelj-Smithies series through order M.
Det2Result det2_series(const JacobiSpec& J, cplx z, int order, std::size_t truncation);

// ---- spectrum ---------------------------------------------------------------

struct ZeroSet {
  std::vector<double> roots;
  std::vector<double> enclosures;  // radius; the root lies in [r - e, r + e]
  std::vector<int> multiplicities;

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
};

struct RootOptions {
  int grid_per_unit = 64;
  int max_refinement = 6;
  TruncationPolicy policy = TruncationPolicy::from_environment();
};

/// Zeros of H_J in [lo, hi] by grid scan, bisection and a secant step.
ZeroSet find_eigenvalues(const JacobiSpec& J, double lo, double hi, double tol,
                         const RootOptions& opts = {});
/// Gershgorin-type lower bound on spec(J) from the sampled entries and the
/// tail bounds.
double spectrum_lower_bound(const JacobiSpec& J, std::size_t sample = 1000);
/// All eigenvalues below `cutoff`.
ZeroSet eigenvalues_below(const JacobiSpec& J, double cutoff, double tol,
                          const RootOptions& opts = {});

/// Ratio |H(r+h) - H(r-h)| / (2h |H'|)-style diagnostic: returns the
/// estimated order of the zero at `root` (1 for a simple zero) from the
/// scaling of |H| at distances h and h/2.
int multiplicity_diagnostic(const JacobiSpec& J, double root, double h = 1e-3);

struct HadamardB {
  double b = 0.0;
  double tail_estimate = 0.0;
  std::size_t zeros_used = 0;
  cplx f0{1.0, 0.0};
};

/// b = Σ (1/λ_n - 1/λ_n(J)) over the supplied zeros (all eigenvalues below
/// some cutoff, ascending).
HadamardB hadamard_b(const JacobiSpec& J, const ZeroSet& zeros, double tol = 1e-12);

struct HadamardValue {
  cplx value{1.0, 0.0};
  cplx partial{1.0, 0.0};  // without any tail factor
  double tail_bound = 0.0;
};

/// F0 e^{bz} Π_{|μ|<=cutoff} (1 - z/μ) e^{z/μ}. With `lambda`, the factors
/// for the missing eigenvalues are approximated by those of λ_n, n > K.
HadamardValue hadamard_eval(cplx z, cplx F0, double b, const ZeroSet& zeros, double cutoff,
                            const Sequence* lambda = nullptr);

struct GrowthSample {
  double radius = 0.0;
  double max_abs = 0.0;
  double log_max_over_r2 = 0.0;
};

std::vector<GrowthSample> growth_scan(const JacobiSpec& J, std::span<const double> radii,
                                      int samples = 64);

}  // namespace charfact
