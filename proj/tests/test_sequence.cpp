#include <cmath>
#include <string>

#include "charfact/error.hpp"
#include "charfact/sequence.hpp"
#include "doctest.h"

using namespace charfact;

namespace {

// Σ_{k=n}^{n+count-1} |x_k x_{k+1}|
double partial_pair_abs(const Sequence& x, std::size_t n, std::size_t count) {
  double s = 0.0;
  for (std::size_t k = n; k < n + count; ++k) s += std::abs(x.pair(k));
  return s;
}

const char* kFamilies[] = {
    "constant(0)",
    "reciprocal(0)",
    "reciprocal(0.5)",
    "geometric(0.5,1)",
    "geometric(0.3,0.25)",
    "scale(2,reciprocal(1))",
    "altscale(3,reciprocal(0))",
    "shiftinv(0.5,linear(1,0))",
    "shiftinv(1+2i,constant(1),linear(2,1))",
    "product(constant(2),reciprocal(0))",
    "gamma2(reciprocal(0))",
};

}  // namespace

TEST_CASE("number literals") {
  CHECK(parse_number("1.5") == cplx(1.5, 0.0));
  CHECK(parse_number("1.5-2i") == cplx(1.5, -2.0));
  CHECK(parse_number("3i") == cplx(0.0, 3.0));
  CHECK(parse_number("-i") == cplx(0.0, -1.0));
  CHECK(parse_number("2e-3") == cplx(2e-3, 0.0));
  CHECK(parse_number("1e-3+1e-3i") == cplx(1e-3, 1e-3));
  CHECK_THROWS_AS(parse_number("abc"), ParseError);
  CHECK_THROWS_AS(parse_number(""), ParseError);
}

TEST_CASE("spec strings round-trip") {
  for (const char* text : kFamilies) {
    const std::string name = text;
    CAPTURE(name);
    Sequence s = parse_sequence(text);
    Sequence t = parse_sequence(s.str());
    CHECK(s.str() == t.str());
    for (std::size_t k = 1; k <= 20; ++k) CHECK(s.term(k) == t.term(k));
  }
}

TEST_CASE("malformed specs are parse errors") {
  CHECK_THROWS_AS(parse_sequence("nosuch(1)"), ParseError);
  CHECK_THROWS_AS(parse_sequence("linear(1)"), ParseError);
  CHECK_THROWS_AS(parse_sequence("linear(1,2"), ParseError);
  CHECK_THROWS_AS(parse_sequence("explicit([1,2)"), ParseError);
  CHECK_THROWS_AS(parse_sequence("geometric(x,1)"), ParseError);
  CHECK_THROWS_AS(parse_sequence("altscale(0,constant(1))"), ParseError);
  CHECK_THROWS_AS(parse_sequence("offset(1,explicit(1,2))"), ParseError);
}

TEST_CASE("family terms") {
  CHECK(parse_sequence("linear(2,1)").term(3) == cplx(7.0));
  CHECK(parse_sequence("reciprocal(0.5)").term(2) == cplx(1.0 / 2.5));
  CHECK(std::abs(parse_sequence("geometric(0.5,1)").term(3) - 0.125) < 1e-16);
  CHECK(parse_sequence("explicit([1,2,3])").term(4) == cplx(0.0));
  CHECK(parse_sequence("explicit(1,2,3)").length() == std::size_t{3});
  CHECK(parse_sequence("shiftinv(0.5,linear(1,0))").term(2) == cplx(1.0 / 1.5));
  CHECK(parse_sequence("shiftinv(0.5,constant(4),linear(1,0))").term(2) == cplx(4.0 / 1.5));
  CHECK(parse_sequence("altscale(2,constant(1))").term(1) == cplx(2.0));
  CHECK(parse_sequence("altscale(2,constant(1))").term(2) == cplx(0.5));
  CHECK(parse_sequence("offset(0.5,linear(1,0))").str() == "linear(1,0.5)");
}

TEST_CASE("gamma2 pairs reproduce w squared") {
  Sequence w = parse_sequence("linear(0.5,1)");
  Sequence g = Sequence::gamma_squared(w);
  for (std::size_t k = 1; k <= 50; ++k) {
    const double wk = w.term(k).real();
    CHECK(std::abs(g.pair(k).real() - wk * wk) <= 1e-13 * wk * wk);
  }
}

TEST_CASE("pair tail bounds are monotone and dominate the tail") {
  for (const char* text : kFamilies) {
    const std::string name = text;
    CAPTURE(name);
    Sequence x = parse_sequence(text);
    double prev = x.pair_tail_bound(1);
    REQUIRE(std::isfinite(prev));
    for (std::size_t n : {2, 3, 5, 10, 40, 200, 1000}) {
      const double b = x.pair_tail_bound(n);
      CHECK(b <= prev * (1.0 + 1e-14));
      CHECK(partial_pair_abs(x, n, 20000) <= b * (1.0 + 1e-12));
      prev = b;
    }
  }
}

TEST_CASE("finite lists have a zero tail past the end") {
  Sequence x = parse_sequence("explicit(1,2,3)");
  CHECK(x.pair_tail_bound(3) == 0.0);
  CHECK(x.pair_tail_bound(1) >= 8.0);
}

TEST_CASE("exact pair tail sums") {
  for (const char* text : {"reciprocal(0)", "reciprocal(0.5)", "geometric(0.5,1)",
                           "shiftinv(0.5,linear(1,0))", "product(constant(2),reciprocal(0))"}) {
    const std::string name = text;
    CAPTURE(name);
    Sequence x = parse_sequence(text);
    for (std::size_t n : {1, 7, 100}) {
      auto s = x.pair_tail_sum(n);
      REQUIRE(s.has_value());
      cplx brute = 0.0;
      // Summed backwards up to a cutoff; the rest is covered by the tail bound.
      const std::size_t cut = n + 400000;
      for (std::size_t k = cut; k >= n; --k) brute += x.pair(k);
      CHECK(std::abs(*s - brute) <= x.pair_tail_bound(cut + 1) + 1e-13);
    }
  }
}

TEST_CASE("inverse power tails of a linear diagonal") {
  Sequence lam = parse_sequence("linear(1,0)");
  for (int p = 2; p <= 5; ++p) {
    auto s = lam.inverse_power_tail_sum(10, p);
    REQUIRE(s.has_value());
    cplx brute = 0.0;
    for (std::size_t k = 2000000; k >= 10; --k) brute += std::pow(1.0 / static_cast<double>(k), p);
    CHECK(std::abs(*s - brute) <= lam.inverse_abs_power_tail_bound(2000001, p) + 1e-15);
    CHECK(lam.inverse_abs_power_tail_bound(10, p) >= std::abs(brute) * (1.0 - 1e-12));
  }
  CHECK(lam.abs_lower_bound(7) <= 7.0);
  CHECK(lam.abs_lower_bound(7) > 6.0);
}

TEST_CASE("zero sequence") {
  Sequence z;
  CHECK(z.term(5) == cplx(0.0));
  CHECK(z.pair_tail_bound(1) == 0.0);
}
