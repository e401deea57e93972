#include <algorithm>
#include <cmath>
#include <string>

#include "charfact/error.hpp"
#include "charfact/jacobi.hpp"

namespace charfact {

namespace {

cplx lu_determinant(std::vector<cplx> a, std::size_t n) {
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    }
    if (a[piv * n + c] == cplx(0.0)) return 0.0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    const cplx p = a[c * n + c];
    det *= p;
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = a[r * n + c] / p;
      if (f == cplx(0.0)) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

}  // namespace

std::vector<cplx> det2_coefficients(std::span<const cplx> traces) {
  const std::size_t M = traces.size() + 1;
  // s_1 = 0 removes the first-order term; s_p = Tr A^p otherwise.
  auto s = [&](std::size_t p) { return p == 1 ? cplx(0.0) : traces[p - 2]; };
  std::vector<cplx> a{1.0};
  for (std::size_t m = 1; m <= M; ++m) {
    std::vector<cplx> mat(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i + 1 < m) mat[i * m + i + 1] = static_cast<double>(m - i - 1);
      for (std::size_t j = 0; j <= i; ++j) mat[i * m + j] = s(i - j + 1);
    }
    a.push_back(lu_determinant(std::move(mat), m));
  }
  return a;
}

std::vector<cplx> tridiagonal_power_traces(std::span<const cplx> diag, std::span<const cplx> offdiag,
                                           int max_power) {
  const std::size_t n = diag.size();
  if (offdiag.size() + 1 < n) throw DomainViolation("off-diagonal too short");
  std::vector<cplx> tr(max_power + 1, 0.0);
  if (max_power < 1 || n == 0) return tr;
  // (A^p)_ii = u_a . u_b with u_k = A^k e_i, a = p/2, b = p - a; A^k e_i is
  // supported within distance k of i, so a window of radius H is exact.
  const std::size_t H = static_cast<std::size_t>((max_power + 1) / 2);
  std::vector<std::vector<cplx>> u(H + 1, std::vector<cplx>(2 * H + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= H ? i - H : 0;
    const std::size_t hi = std::min(n - 1, i + H);
    const std::size_t width = hi - lo + 1;
    for (auto& v : u) std::fill(v.begin(), v.begin() + width, cplx(0.0));
    u[0][i - lo] = 1.0;
    for (std::size_t k = 1; k <= H; ++k) {
      for (std::size_t j = 0; j < width; ++j) {
        const std::size_t g = lo + j;
        cplx v = diag[g] * u[k - 1][j];
        if (j > 0) v += offdiag[g - 1] * u[k - 1][j - 1];
        if (j + 1 < width) v += offdiag[g] * u[k - 1][j + 1];
        u[k][j] = v;
      }
    }
    for (int p = 1; p <= max_power; ++p) {
      const std::size_t a = static_cast<std::size_t>(p / 2), b = static_cast<std::size_t>(p) - a;
      cplx acc = 0.0;
      for (std::size_t j = 0; j < width; ++j) acc += u[a][j] * u[b][j];
      tr[p] += acc;
    }
  }
  return tr;
}

Det2Result det2_series(const JacobiSpec& J, cplx z, int order, std::size_t truncation) {
  if (order < 2) throw DomainViolation("det2 series order must be >= 2");
  if (truncation < 2) throw DomainViolation("det2 truncation must be >= 2");
  std::vector<cplx> diag(truncation), off(truncation - 1);
  std::vector<cplx> root(truncation + 1);
  for (std::size_t k = 1; k <= truncation; ++k) {
    const cplx l = J.lambda().term(k);
    if (l == cplx(0.0)) throw DomainViolation("lambda_" + std::to_string(k) + " is zero");
    diag[k - 1] = -z / l;
    root[k - 1] = std::sqrt(l);
  }
  for (std::size_t k = 1; k < truncation; ++k) {
    off[k - 1] = J.w().term(k) / (root[k - 1] * root[k]);
  }
  const std::vector<cplx> tr = tridiagonal_power_traces(diag, off, order);
  Det2Result r;
  r.truncation = truncation;
  r.coefficients = det2_coefficients(std::span<const cplx>(tr).subspan(2));
  cplx acc = 0.0;
  double fact = 1.0;
  for (std::size_t m = 0; m < r.coefficients.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    acc += r.coefficients[m] / fact;
    r.partial_sums.push_back(acc);
  }
  r.value = acc;
  return r;
}

}  // namespace charfact
