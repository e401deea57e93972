#pragma once

// Brute-force references for tests and cross-checks. Nothing in the numeric
// layer calls into this module except coupling_zeros, which needs a symmetric
// tridiagonal eigensolver and uses the Sturm bisection here.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace charfact::oracle {

using cplx = std::complex<double>;

/// The defining alternating multi-sum over index chains k_{j+1} >= k_j + 2.
/// Lists longer than 20 are refused (ResourceLimit).
cplx f_multisum(std::span<const cplx> x,
                std::size_t max_order = std::numeric_limits<std::size_t>::max());

struct TridiagMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size() - 1 entries
  std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const TridiagMatrix& m, double x);
/// All eigenvalues, ascending, to `abs_tol`.
std::vector<double> tridiag_eigen(const TridiagMatrix& m, double abs_tol = 1e-13);
/// Eigenvalues with ascending indices first..last (0-based, inclusive); each
/// is bisected until the bracket is below max(abs_tol, rel_tol * |value|).
std::vector<double> tridiag_eigen_range(const TridiagMatrix& m, std::size_t first,
                                        std::size_t last, double abs_tol, double rel_tol);
/// det(M - z I) by the tridiagonal determinant recurrence.
cplx charpoly_direct(const TridiagMatrix& m, cplx z);
/// Determinant by LU with partial pivoting.
cplx dense_determinant(std::vector<std::vector<cplx>> a);

/// Σ (-1)^k (z/2)^{2k+ν} / (k! Γ(ν+k+1)), summed in 50-digit arithmetic.
/// Any real ν is accepted (1/Γ vanishes at the poles), z >= 0 unless ν is an
/// integer.
double bessel_series(double nu, double z, double tol = 1e-17);
/// ψ(x)
double digamma(double x);
/// (1/J_0(2w)) Σ (-1)^k ψ(k+1) w^{2k} / (k!)^2
double bessel_c(double w);
/// j_{0,k}, k = 1..count, by sign changes of the power series J_0 and bisection.
std::vector<double> bessel_j0_zeros(std::size_t count);
/// McMahon expansion of j_{ν,k}.
double bessel_zero_mcmahon(double nu, std::size_t k);
/// Σ_{k>K} j_{ν,k}^{-p} from McMahon terms plus an integral tail.
double bessel_zero_tail(double nu, std::size_t K, int p);

}  // namespace charfact::oracle
