#include "charfact/combinat.hpp"
#include "charfact/error.hpp"
#include "doctest.h"

using namespace charfact;
using namespace charfact::combinat;

TEST_CASE("compositions") {
  CHECK(compositions(1) == std::vector<Multiindex>{Multiindex{1}});
  const std::vector<Multiindex> three{{1, 1, 1}, {1, 2}, {2, 1}, {3}};
  CHECK(compositions(3) == three);
  auto eight = compositions(8);
  CHECK(eight.size() == 128);
  for (const auto& m : eight) CHECK(m.order() == 8);
  for (unsigned N = 1; N <= 12; ++N) CHECK(compositions(N).size() == (std::size_t{1} << (N - 1)));
  Limits tight;
  tight.max_compositions = 4;
  CHECK_THROWS_AS(compositions(4, tight), ResourceLimit);
}

TEST_CASE("multiindex validation") {
  CHECK_THROWS_AS(Multiindex(std::vector<unsigned>{}), DomainViolation);
  CHECK_THROWS_AS(Multiindex({1, 0}), DomainViolation);
  Multiindex m{2, 3, 1};
  CHECK(m.order() == 6);
  CHECK(m.length() == 3);
}

TEST_CASE("beta, alpha, epsilon1") {
  CHECK(beta({1}) == 1);
  CHECK(beta({2, 1}) == 2);
  CHECK(alpha({1}) == 1);
  CHECK(alpha({2, 1}) == 1);
  CHECK(alpha({1, 1, 1}) == 1);
  CHECK(epsilon1({5}) == 0);
  CHECK(epsilon1({1, 1}) == 1);
  CHECK(epsilon1({2, 3, 1}) == 5);
  BigInt sb = 0;
  for (const auto& m : compositions(3)) sb += beta(m);
  CHECK(sb == 5);
}

TEST_CASE("sums over compositions") {
  CHECK(sum_alpha(1) == 1);
  CHECK(sum_alpha(2) == ExactRational(3, 2));
  CHECK(sum_alpha(6) == 77);
  CHECK(to_string(sum_alpha(2)) == "3/2");
  for (unsigned N = 1; N <= 14; ++N) {
    CAPTURE(N);
    CHECK(sum_alpha(N) == ExactRational(central_binomial(N), 2 * N));
    CHECK(sum_beta(N) == catalan(N));
  }
}

TEST_CASE("path counts") {
  for (unsigned N = 1; N <= 10; ++N) CHECK(count_dyck_paths(Multiindex{N}) == 1);
  CHECK(count_dyck_paths({1, 1}) == 1);
  CHECK(count_dyck_paths({2, 1}) == 2);
  CHECK(count_loops({1}) == 2);
  CHECK(count_loops({2, 1}) == 6);
  CHECK(count_loops({1, 1, 1}) == 6);
  for (unsigned N = 1; N <= 6; ++N) {
    for (const auto& m : compositions(N)) {
      CAPTURE(m.str());
      CHECK(count_dyck_paths(m) == beta(m));
      CHECK(ExactRational(count_loops(m)) == ExactRational(2 * m.order()) * alpha(m));
    }
  }
  Limits tight;
  tight.max_path_order = 3;
  CHECK_THROWS_AS(count_dyck_paths({2, 2}, tight), ResourceLimit);
}

TEST_CASE("alpha against the multinomial") {
  for (unsigned N = 1; N <= 10; ++N) {
    for (const auto& m : compositions(N)) {
      CAPTURE(m.str());
      const ExactRational bound(multinomial(m), m.order());
      const ExactRational a = alpha(m);
      CHECK(a <= bound);
      CHECK((a == bound) == (m.length() <= 2));
    }
  }
}

TEST_CASE("binomials") {
  CHECK(binomial(10, 3) == 120);
  CHECK(catalan(5) == 42);
  CHECK(central_binomial(6) == 924);
  CHECK(to_double(ExactRational(1, 4)) == 0.25);
}
