#pragma once

#include <complex>
#include <cstddef>

#include "charfact/sequence.hpp"

namespace charfact::detail {

// Ĝ_j ≈ 𝔉(x_{j+1}, x_{j+2}, ...) with |G_j - Ĝ_j| <= error.
struct TailFactor {
  cplx value = 1.0;
  double error = 0.0;
};
TailFactor tail_factor(const Sequence& x, std::size_t j);

// Π_{k>n} (1 - z/λ_k) e^{z/λ_k} ≈ exp(log_value), relative error <= rel_error.
struct PhiTail {
  cplx log_value = 0.0;
  double rel_error = 0.0;
};
PhiTail phi_tail(const Sequence& lambda, cplx z, std::size_t n);

}  // namespace charfact::detail
