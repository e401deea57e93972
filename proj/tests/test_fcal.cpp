#include <cmath>
#include <cstdlib>
#include <random>

#include "charfact/combinat.hpp"
#include "charfact/error.hpp"
#include "charfact/fcal.hpp"
#include "charfact/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace charfact;
using testutil::rel_err;

namespace {

constexpr double kJ0of2 = 0.22389077914123566805;
// 𝔉({0.5^k}) and its log, 40-digit recurrence
constexpr double kFGeom = 0.83472153331034859761;
constexpr double kLogFGeom = -0.18065710279395114574;

double pair_abs_sum(const std::vector<cplx>& x) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) s += std::abs(x[k] * x[k + 1]);
  return s;
}

std::vector<cplx> with_pair_sum(std::vector<cplx> x, double s) {
  const double f = std::sqrt(s / pair_abs_sum(x));
  for (auto& v : x) v *= f;
  return x;
}

}  // namespace

TEST_CASE("finite lists") {
  CHECK(f_finite({}) == cplx(1.0));
  std::vector<cplx> one{cplx(3.0, 1.0)};
  CHECK(f_finite(one) == cplx(1.0));
  std::vector<cplx> ones{1.0, 1.0, 1.0};
  CHECK(f_finite(ones) == cplx(-1.0));
}

TEST_CASE("recurrence agrees with the multi-sum") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    auto x = testutil::random_list(rng, t % 11);
    CHECK(rel_err(f_finite(x), oracle::f_multisum(x)) < 1e-12);
  }
}

TEST_CASE("scale invariance") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    auto x = testutil::random_list(rng, 1 + t % 15);
    const cplx s(0.3 + 0.1 * t, -0.7);
    auto y = x;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = (k % 2 == 0) ? s * x[k] : x[k] / s;
    CHECK(rel_err(f_finite(y), f_finite(x)) < 1e-12);
  }
}

TEST_CASE("exponential bound on |F - 1|") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    auto x = testutil::random_list(rng, 1 + t % 12, 1.5);
    CHECK(std::abs(f_finite(x) - 1.0) <= std::expm1(pair_abs_sum(x)) * (1 + 1e-12) + 1e-15);
  }
}

TEST_CASE("infinite sequences") {
  SUBCASE("zero sequence") {
    EvalResult r = f_infinite(Sequence(), 1e-12);
    CHECK(r.value == cplx(1.0));
    CHECK(r.error_bound == 0.0);
  }
  SUBCASE("reciprocal gives J0(2)") {
    EvalResult r = f_infinite(parse_sequence("reciprocal(0)"), 1e-10);
    CHECK(r.error_bound <= 1e-10);
    CHECK(std::abs(r.value - kJ0of2) <= r.error_bound + 1e-14);
  }
  SUBCASE("alternating rescale leaves the value alone") {
    EvalResult a = f_infinite(parse_sequence("reciprocal(0)"), 1e-10);
    EvalResult b = f_infinite(parse_sequence("altscale(2,reciprocal(0))"), 1e-10);
    CHECK(std::abs(a.value - b.value) <= 2e-10);
  }
  SUBCASE("geometric") {
    EvalResult r = f_infinite(parse_sequence("geometric(0.5,1)"), 1e-13);
    CHECK(std::abs(r.value - kFGeom) <= r.error_bound + 1e-15);
  }
  SUBCASE("bound is honest across tolerances") {
    for (double tol : {1e-3, 1e-6, 1e-9}) {
      EvalResult r = f_infinite(parse_sequence("reciprocal(0)"), tol);
      CHECK(std::abs(r.value - kJ0of2) <= r.error_bound + 1e-15);
    }
  }
  SUBCASE("divergent pair sum") {
    CHECK_THROWS_AS(f_infinite(parse_sequence("linear(1,0)"), 1e-10), NonConvergent);
  }
  SUBCASE("truncation cap") {
    TruncationPolicy p;
    p.max_terms = 32;
    CHECK_THROWS_AS(f_infinite(parse_sequence("reciprocal(0)"), 1e-12, p), NonConvergent);
  }
}

TEST_CASE("truncation cap from the environment") {
  setenv("CHARFACT_MAX_TRUNCATION", "64", 1);
  CHECK(TruncationPolicy::from_environment().max_terms == 64);
  unsetenv("CHARFACT_MAX_TRUNCATION");
  CHECK(TruncationPolicy::from_environment().max_terms == 1000000);
}

TEST_CASE("sign of F") {
  CHECK(f_sign(parse_sequence("reciprocal(0)")) == 1);
  // J0(2w) < 0 for w = 1.5
  CHECK(f_sign(parse_sequence("scale(1.5,reciprocal(0))")) == -1);
}

TEST_CASE("log F") {
  EvalResult r = log_f(parse_sequence("geometric(0.5,1)"), 1e-12);
  CHECK(std::abs(r.value - kLogFGeom) <= r.error_bound + 1e-15);
  CHECK_THROWS_AS(log_f(parse_sequence("explicit(1,1)"), 1e-10), DomainViolation);
}

TEST_CASE("log series") {
  SUBCASE("two equal entries") {
    const double t = 0.1;
    std::vector<cplx> x{t, t};
    SeriesResult s = log_f_series(x, 50);
    CHECK(std::abs(s.value - std::log(1.0 - t * t)) < 1e-14);
  }
  SUBCASE("zero list") {
    std::vector<cplx> x(5, 0.0);
    CHECK(log_f_series(x, 10).value == cplx(0.0));
  }
  SUBCASE("random lists at s = 0.3") {
    std::mt19937_64 rng(14);
    const double s = 0.3;
    const double bound = std::pow(s, 21) / 21.0 / (1.0 - s);
    for (int t = 0; t < 50; ++t) {
      auto x = with_pair_sum(testutil::random_list(rng, 2 + t % 20), s);
      SeriesResult r = log_f_series(x, 20);
      CHECK(std::abs(r.value - std::log(f_finite(x))) <= bound + 1e-15);
      for (const cplx& p : r.partial_sums) CHECK(std::abs(p) <= -std::log(1.0 - s));
    }
  }
  SUBCASE("infinite form") {
    SeriesResult r = log_f_series(parse_sequence("geometric(0.5,1)"), 25);
    CHECK(std::abs(r.value - kLogFGeom) <= r.tail_bound + 1e-15);
  }
  SUBCASE("domain") {
    std::vector<cplx> x{1.0, 1.0};
    CHECK_THROWS_AS(log_f_series(x, 5), DomainViolation);
  }
}

TEST_CASE("log coefficients are the composition sums") {
  // c_N = Σ_{m∈ℳ(N)} α(m) Σ_k Π_j p_{k+j-1}^{m_j}, brute force over compositions.
  std::mt19937_64 rng(15);
  auto p = testutil::random_list(rng, 7, 0.5);
  const int N = 6;
  auto c = log_coefficients(p, N);
  for (int n = 1; n <= N; ++n) {
    cplx brute = 0.0;
    for (const auto& m : combinat::compositions(n)) {
      const double a = combinat::to_double(combinat::alpha(m));
      for (std::size_t k = 0; k + m.length() <= p.size(); ++k) {
        cplx prod = 1.0;
        for (std::size_t j = 0; j < m.length(); ++j) prod *= std::pow(p[k + j], static_cast<int>(m[j]));
        brute += a * prod;
      }
    }
    CHECK(std::abs(c[n] - brute) < 1e-13);
  }
}
