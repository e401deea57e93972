#include <cmath>
#include <numbers>
#include <random>

#include "charfact/error.hpp"
#include "charfact/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace charfact;
using namespace charfact::oracle;

TEST_CASE("multi-sum on small lists") {
  CHECK(f_multisum({}) == cplx(1.0));
  std::vector<cplx> x{1.0, 2.0, 3.0};
  // 1 - (2 + 6)
  CHECK(f_multisum(x) == cplx(-7.0));
  std::vector<cplx> y{1.0, 1.0, 1.0, 1.0};
  // 1 - 3 + 1
  CHECK(f_multisum(y) == cplx(-1.0));
  std::vector<cplx> big(21, 0.1);
  CHECK_THROWS_AS(f_multisum(big), ResourceLimit);
}

TEST_CASE("tridiagonal eigenvalues") {
  TridiagMatrix m{{1.0, 2.0, 3.0}, {1.0, 1.0}};
  auto ev = tridiag_eigen(m);
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[0] - (2 - std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(ev[1] - 2.0) < 1e-12);
  CHECK(std::abs(ev[2] - (2 + std::sqrt(3.0))) < 1e-12);
  CHECK(sturm_count(m, 2.5) == 2);
  auto top = tridiag_eigen_range(m, 2, 2, 1e-15, 1e-15);
  CHECK(std::abs(top[0] - (2 + std::sqrt(3.0))) < 1e-14);
}

TEST_CASE("determinants agree") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 7;
    TridiagMatrix m;
    for (std::size_t i = 0; i < n; ++i) m.diag.push_back(u(rng));
    for (std::size_t i = 0; i + 1 < n; ++i) m.offdiag.push_back(u(rng));
    const cplx z(u(rng), u(rng));
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      a[i][i] = m.diag[i] - z;
      if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = m.offdiag[i];
    }
    CHECK(testutil::rel_err(charpoly_direct(m, z), dense_determinant(a)) < 1e-12);
  }
}

TEST_CASE("Bessel series") {
  CHECK(std::abs(bessel_series(0.0, 2.0) - 0.22389077914123567) < 1e-16);
  CHECK(std::abs(bessel_series(1.0, 2.0) - 0.57672480775687339) < 1e-16);
  CHECK(std::abs(bessel_series(0.5, 2.0) - std::sin(2.0) / std::sqrt(std::numbers::pi)) < 1e-15);
  // J_{-n} = (-1)^n J_n
  CHECK(std::abs(bessel_series(-3.0, 2.0) + bessel_series(3.0, 2.0)) < 1e-16);
  CHECK(std::abs(bessel_series(-0.5, 2.0) - std::cos(2.0) / std::sqrt(std::numbers::pi)) < 1e-15);
}

TEST_CASE("digamma and c") {
  CHECK(std::abs(digamma(1.0) + 0.57721566490153286) < 1e-15);
  CHECK(std::abs(digamma(0.5) + 1.9635100260214235) < 1e-14);
  CHECK(std::abs(bessel_c(1.0) - (-3.5807469827864819)) < 1e-12);
}

TEST_CASE("zeros of J0") {
  auto z = bessel_j0_zeros(5);
  const double want[] = {2.4048255576957728, 5.5200781102863106, 8.6537279129110122,
                         11.791534439014282, 14.930917708487786};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(z[k] - want[k]) < 1e-12);
  auto many = bessel_j0_zeros(20);
  CHECK(std::abs(many[19] - bessel_zero_mcmahon(0.0, 20)) < 1e-9);
  CHECK_THROWS_AS(bessel_j0_zeros(21), ResourceLimit);
  for (std::size_t k = 0; k < many.size(); ++k) CHECK(many[k] > (k + 0.75) * std::numbers::pi);
}

TEST_CASE("zero tail sums") {
  // Σ_k j_{0,k}^{-2} = 1/4
  auto z = bessel_j0_zeros(20);
  double s = 0.0;
  for (double v : z) s += 1.0 / (v * v);
  CHECK(std::abs(s + bessel_zero_tail(0.0, 20, 2) - 0.25) < 1e-9);
  // Σ j^{-4} = 1/32
  double s4 = 0.0;
  for (double v : z) s4 += std::pow(v, -4);
  CHECK(std::abs(s4 + bessel_zero_tail(0.0, 20, 4) - 1.0 / 32) < 1e-12);
}
