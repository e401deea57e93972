#include <cmath>
#include <numbers>

#include "charfact/combinat.hpp"
#include "charfact/coupling.hpp"
#include "charfact/error.hpp"
#include "charfact/oracle.hpp"
#include "doctest.h"

using namespace charfact;
using combinat::ExactRational;

namespace {

constexpr double kJ0of1 = 0.76519768655796655145;
constexpr double kHalfJ01 = 1.2024127788478864;

CouplingProblem bessel_problem() { return CouplingProblem::make(Sequence::reciprocal(0.0)); }

}  // namespace

TEST_CASE("problem setup") {
  CouplingProblem P = bessel_problem();
  CHECK(P.positivity);
  CHECK_FALSE(CouplingProblem::make(parse_sequence("altscale(-1,reciprocal(0))")).positivity);
  CHECK_THROWS_AS(CouplingProblem::make(Sequence::linear(1.0, 0.0)), DomainViolation);
  CHECK_THROWS_AS(CouplingProblem::make(Sequence::explicit_list({1.0, 0.0, 1.0})), DomainViolation);
  auto a = aux_offdiag(P, 4);
  REQUIRE(a.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(a[k] - 1.0 / std::sqrt(double(k + 1) * (k + 2))) < 1e-15);
}

TEST_CASE("f(w) is J0(2w)") {
  CouplingProblem P = bessel_problem();
  for (double w : {0.25, 0.5, 1.0, 2.0}) {
    EvalResult r = coupling_eval(P, w, 1e-9);
    CHECK(std::abs(r.value - oracle::bessel_series(0.0, 2 * w)) <= r.error_bound + 1e-13);
  }
}

TEST_CASE("zeros of f") {
  CouplingProblem P = bessel_problem();
  CouplingZeros z = coupling_zeros(P, 20, 1e-10);
  REQUIRE(z.zeta.size() == 20);
  auto j = oracle::bessel_j0_zeros(20);
  for (std::size_t k = 0; k < 20; ++k) {
    CAPTURE(k);
    CHECK(std::abs(z.zeta[k] - j[k] / 2) <= z.enclosures[k] + 1e-12);
    if (k > 0) CHECK(z.zeta[k] > z.zeta[k - 1]);
  }
  CHECK(std::abs(z.zeta[0] - kHalfJ01) < 1e-10);
  CHECK(z.certified[0]);

  SUBCASE("product with the trace tail") {
    CouplingZeros big = coupling_zeros(P, 50, 1e-10);
    PowerSum T = trace_tail(P, big);
    ProductValue pv = product_eval(big, 0.5, T.value.real());
    CHECK(std::abs(pv.value - kJ0of1) <= pv.tail_bound + 1e-9);
    CHECK(std::abs(pv.partial - product_eval(big, 0.5)) < 1e-15);
    // The uncorrected partial product is visibly off.
    CHECK(std::abs(pv.partial - kJ0of1) > 1e-4);
  }
}

TEST_CASE("power sums") {
  CouplingProblem P = bessel_problem();
  // Σ ζ^{-2n} = 4^n σ_0(2n): 1, 1/2, 1/3
  const double want[] = {1.0, 0.5, 1.0 / 3.0};
  for (unsigned n = 1; n <= 3; ++n) {
    PowerSum s = power_sum(P, n, 1e-13);
    CHECK(std::abs(s.value - want[n - 1]) <= s.tail_bound + 1e-13);
  }
  SUBCASE("smallest root estimates increase toward the first zero") {
    double prev = 0.0;
    for (unsigned N : {1u, 2u, 4u, 8u}) {
      double e = smallest_root_estimate(P, N).value.real();
      CHECK(e > prev);
      CHECK(e <= kHalfJ01 + 1e-12);
      prev = e;
    }
    CHECK(std::abs(prev - kHalfJ01) < 1e-5);
  }
}

TEST_CASE("Rayleigh sums") {
  for (double nu : {0.0, 0.5, 1.0, 2.5}) {
    CAPTURE(nu);
    CHECK(std::abs(rayleigh_sigma(nu, 1).value - 1.0 / (4 * (nu + 1))) < 1e-13);
    CHECK(std::abs(rayleigh_sigma(nu, 2).value - 1.0 / (16 * (nu + 1) * (nu + 1) * (nu + 2))) < 1e-13);
    CHECK(std::abs(rayleigh_sigma(nu, 3).value -
                   1.0 / (32 * std::pow(nu + 1, 3) * (nu + 2) * (nu + 3))) < 1e-13);
  }
  SUBCASE("against the coefficient recurrence") {
    for (double nu : {0.0, 1.5}) {
      auto g = bessel_product_coefficients(nu, 5);
      auto sigma = zeta_recurrence<double>(g);
      for (unsigned n = 1; n <= 5; ++n)
        CHECK(std::abs(rayleigh_sigma(nu, n).value - sigma[n - 1]) <= 1e-13);
    }
  }
  PowerSum s4 = rayleigh_sigma(0.0, 2, 1e-14);
  CHECK(std::abs(s4.value - 1.0 / 32) <= s4.tail_bound + 1e-15);
}

TEST_CASE("Bessel functions from F") {
  struct Case {
    double nu, w, want;
  };
  for (const Case& c : {Case{0.0, 1.0, 0.22389077914123567}, Case{0.5, 1.0, 0.51301613656182775},
                        Case{2.0, 0.7, oracle::bessel_series(2.0, 1.4)}}) {
    EvalResult r = bessel_F(c.nu, c.w, 1e-10);
    CHECK(std::abs(r.value - c.want) <= r.error_bound + 1e-14);
  }
  CHECK_THROWS_AS(bessel_F(-1.5, 1.0, 1e-10), DomainViolation);
}

TEST_CASE("q-Airy") {
  CHECK(std::abs(qairy(0.5, 1.0).value - 0.16076378893208873) < 1e-15);
  CHECK(std::abs(qairy(0.5, 0.01).value - 0.99001666071478174) < 1e-15);
  EvalResult f = f_infinite(qairy_sequence(0.5, 0.1), 1e-15);
  CHECK(std::abs(f.value - 0.99001666071478174) <= f.error_bound + 1e-15);

  SUBCASE("moment sums, exact") {
    const ExactRational q(1, 2);
    const ExactRational want[] = {ExactRational(1), ExactRational(2, 3), ExactRational(29, 56),
                                  ExactRational(33, 80), ExactRational(10479, 31744),
                                  ExactRational(272921, 1032192)};
    auto rec = qairy_zeta_recurrence(q, 6);
    for (unsigned N = 1; N <= 6; ++N) {
      CHECK(qairy_zeta(q, N) == want[N - 1]);
      CHECK(rec[N - 1] == want[N - 1]);
    }
  }
  SUBCASE("moment sums, floating") {
    auto rec = qairy_zeta_recurrence(0.3, 6);
    for (unsigned N = 1; N <= 6; ++N) CHECK(std::abs(qairy_zeta(0.3, N) - rec[N - 1]) < 1e-12 * rec[N - 1]);
  }
  SUBCASE("coefficients") {
    auto c = qairy_coefficients(0.5, 3);
    CHECK(c[0] == doctest::Approx(-1.0));
    CHECK(c[1] == doctest::Approx(0.0625 / 0.375));
  }
}
