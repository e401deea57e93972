#pragma once

#include <complex>
#include <random>
#include <vector>

namespace testutil {

using cplx = std::complex<double>;

inline double rel_err(cplx a, cplx b) {
  const double d = std::abs(b);
  return std::abs(a - b) / (d > 0.0 ? d : 1.0);
}

inline std::vector<cplx> random_list(std::mt19937_64& rng, std::size_t n, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cplx> x(n);
  for (auto& v : x) v = {u(rng), u(rng)};
  return x;
}

}  // namespace testutil
