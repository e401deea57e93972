// End-to-end checks; one PASS/FAIL line per criterion, non-zero exit if any
// fails. Reference values come from the oracle module or from closed forms.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charfact/combinat.hpp"
#include "charfact/coupling.hpp"
#include "charfact/error.hpp"
#include "charfact/fcal.hpp"
#include "charfact/jacobi.hpp"
#include "charfact/oracle.hpp"

using namespace charfact;
using combinat::ExactRational;

namespace {

constexpr double kGamma = 0.57721566490153286061;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%2d] %-4s %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<cplx> random_list(std::mt19937_64& rng, std::size_t n, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cplx> x(n);
  for (auto& v : x) v = {u(rng), u(rng)};
  return x;
}

JacobiSpec bessel_jacobi() {
  return JacobiSpec::certified(Sequence::linear(1.0, 0.0), Sequence::constant(1.0));
}

// Sign changes of z -> J_{-z}(2) on [lo, hi], refined by bisection.
std::vector<double> bessel_order_zeros(double lo, double hi) {
  auto f = [](double z) { return oracle::bessel_series(-z, 2.0); };
  std::vector<double> out;
  const double step = 1e-3;
  double a = lo, fa = f(a);
  while (a < hi) {
    double b = std::min(a + step, hi), fb = f(b);
    if ((fa < 0) != (fb < 0)) {
      double l = a, h = b, fl = fa;
      for (int i = 0; i < 100 && h - l > 1e-15; ++i) {
        double m = 0.5 * (l + h), fm = f(m);
        if ((fm < 0) == (fl < 0)) {
          l = m;
          fl = fm;
        } else {
          h = m;
        }
      }
      out.push_back(0.5 * (l + h));
    }
    a = b;
    fa = fb;
  }
  return out;
}

}  // namespace

int main() {
  report(1, "exact sums of alpha and beta over compositions, N <= 12", [] {
    for (unsigned N = 1; N <= 12; ++N) {
      if (combinat::sum_alpha(N) != ExactRational(combinat::central_binomial(N), 2 * N))
        return Outcome{false, "sum alpha differs at N = " + std::to_string(N)};
      if (combinat::sum_beta(N) != combinat::catalan(N))
        return Outcome{false, "sum beta differs at N = " + std::to_string(N)};
    }
    return Outcome{true, "N = 1..12 exact"};
  });

  report(2, "path and loop counts, |m| <= 8", [] {
    std::size_t checked = 0;
    for (unsigned N = 1; N <= 8; ++N) {
      for (const auto& m : combinat::compositions(N)) {
        if (combinat::count_dyck_paths(m) != combinat::beta(m))
          return Outcome{false, "dyck count differs at m = " + m.str()};
        if (ExactRational(combinat::count_loops(m)) != ExactRational(2 * m.order()) * combinat::alpha(m))
          return Outcome{false, "loop count differs at m = " + m.str()};
        ++checked;
      }
    }
    return Outcome{true, std::to_string(checked) + " multiindices"};
  });

  report(3, "determinant identity on 200 random Jacobi matrices", [] {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0), v(0.05, 1.5);
    std::bernoulli_distribution sgn(0.5);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + t % 12;
      oracle::TridiagMatrix m;
      std::vector<cplx> lam, w;
      for (std::size_t i = 0; i < n; ++i) m.diag.push_back(u(rng));
      for (std::size_t i = 0; i + 1 < n; ++i) m.offdiag.push_back(sgn(rng) ? v(rng) : -v(rng));
      for (double d : m.diag) lam.push_back(d);
      for (double o : m.offdiag) w.push_back(o);
      w.push_back(1.0);  // w_n never enters the n-row determinant
      const cplx z(u(rng), 0.1 + std::abs(u(rng)));
      auto g = gamma_sequence(Sequence::explicit_list(w), n);
      std::vector<cplx> x(n);
      cplx prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = g[i] * g[i] / (lam[i] - z);
        prod *= lam[i] - z;
      }
      std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = m.diag[i] - z;
        if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = m.offdiag[i];
      }
      worst = std::max(worst, rel(f_finite(x) * prod, oracle::dense_determinant(a)));
    }
    return Outcome{worst <= 1e-10, fmt("max rel err %.2e (tol 1e-10)", worst)};
  });

  report(4, "recurrence vs multi-sum on 500 random lists", [] {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      auto x = random_list(rng, t % 15, 1.0);
      cplx a = f_finite(x), b = oracle::f_multisum(x);
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    return Outcome{worst <= 1e-12, fmt("max err %.2e (tol 1e-12)", worst)};
  });

  report(5, "log series at pair sum 0.3, order 25", [] {
    std::mt19937_64 rng(5);
    const double s = 0.3;
    const int N = 25;
    const double bound = std::pow(s, N + 1) / ((N + 1) * (1.0 - s));
    double worst_ratio = 0.0, worst_major = 0.0;
    for (int t = 0; t < 100; ++t) {
      auto x = random_list(rng, 2 + t % 30, 1.0);
      double ps = 0.0;
      for (std::size_t k = 0; k + 1 < x.size(); ++k) ps += std::abs(x[k] * x[k + 1]);
      const double f = std::sqrt(s / ps);
      for (auto& v : x) v *= f;
      SeriesResult r = log_f_series(x, N);
      worst_ratio = std::max(worst_ratio, std::abs(r.value - std::log(f_finite(x))) / bound);
      std::vector<cplx> pairs;
      for (std::size_t k = 0; k + 1 < x.size(); ++k) pairs.push_back(x[k] * x[k + 1]);
      auto c = log_coefficients(pairs, N);
      for (int n = 1; n <= N; ++n) worst_major = std::max(worst_major, std::abs(c[n]) / (std::pow(s, n) / n));
    }
    const bool ok = worst_ratio <= 1.0 && worst_major <= 1.0 + 1e-12;
    return Outcome{ok, fmt("err/bound %.3f, |c_N|/(s^N/N) %.3f (bound %.2e)", worst_ratio, worst_major, bound)};
  });

  // Shared by 6 and 11.
  JacobiSpec J = bessel_jacobi();
  ZeroSet below;
  HadamardB hb;
  bool have_hadamard = false;
  try {
    below = eigenvalues_below(J, 200.5, 1e-12);
    hb = hadamard_b(J, below);
    have_hadamard = true;
  } catch (const std::exception& e) {
    std::printf("     hadamard setup failed: %s\n", e.what());
  }

  report(6, "zeros of H in [0,5] and the Hadamard constant", [&] {
    ZeroSet z = find_eigenvalues(J, 0.0, 5.0, 1e-12);
    auto ref = bessel_order_zeros(0.0, 5.0);
    if (z.size() != ref.size())
      return Outcome{false, "found " + std::to_string(z.size()) + " zeros, oracle " + std::to_string(ref.size())};
    double worst = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(z.roots[k] - ref[k]));
    if (!have_hadamard) return Outcome{false, "no Hadamard constant"};
    const double c1 = oracle::bessel_c(1.0);
    const double db = std::abs(hb.b - c1);
    std::printf("     info b = %.12f, c(1) = %.12f, c(1)+gamma = %.12f, |b-(c(1)+gamma)| = %.2e\n", hb.b, c1,
                c1 + kGamma, std::abs(hb.b - (c1 + kGamma)));
    const bool ok = worst <= 1e-6 && db <= 1e-4;
    return Outcome{ok, std::to_string(ref.size()) +
                           fmt(" zeros, max err %.2e (tol 1e-6); |b - c(1)| = %.3e (tol 1e-4)", worst, db)};
  });

  CouplingProblem P = CouplingProblem::make(Sequence::reciprocal(0.0));

  report(7, "coupling zeros of the Bessel family", [&] {
    CouplingZeros z = coupling_zeros(P, 50, 1e-12);
    const double j01 = oracle::bessel_j0_zeros(1)[0];
    const double e1 = std::abs(z.zeta[0] - j01 / 2);
    PowerSum T = trace_tail(P, z);
    ProductValue pv = product_eval(z, 0.5, T.value.real());
    const double J01 = oracle::bessel_series(0.0, 1.0);
    const double e2 = std::abs(pv.value - J01);
    double partial = 0.0;
    bool sums_ok = true;
    for (std::size_t K = 1; K <= z.zeta.size(); ++K) {
      partial += 1.0 / (z.zeta[K - 1] * z.zeta[K - 1]);
      const double resid = 1.0 - partial;
      if (!(resid >= -1e-12 && resid <= 4.0 / (kPi * kPi * (K - 0.25)))) sums_ok = false;
    }
    const bool ok = e1 <= 1e-8 && e2 <= 1e-4 && sums_ok;
    return Outcome{ok, fmt("|zeta1 - j01/2| %.2e, product(0.5) err %.2e, ", e1, e2) +
                           (sums_ok ? "partial sums within residual bound" : "partial sums out of bound")};
  });

  report(8, "power sums vs sums over the roots", [&] {
    double worst = 0.0;
    CouplingZeros zb = coupling_zeros(P, 200, 1e-12);
    for (unsigned n = 1; n <= 3; ++n) {
      double s = 0.0;
      for (auto it = zb.zeta.rbegin(); it != zb.zeta.rend(); ++it) s += std::pow(*it, -2.0 * n);
      s += std::pow(4.0, n) * oracle::bessel_zero_tail(0.0, 200, 2 * static_cast<int>(n));
      worst = std::max(worst, rel(power_sum(P, n).value, s));
    }
    CouplingProblem Q = CouplingProblem::make(qairy_sequence(0.5));
    CouplingZeros zq = coupling_zeros(Q, 100, 1e-12);
    for (unsigned n = 1; n <= 3; ++n) {
      double s = 0.0;
      for (auto it = zq.zeta.rbegin(); it != zq.zeta.rend(); ++it) s += std::pow(*it, -2.0 * n);
      worst = std::max(worst, rel(power_sum(Q, n).value, s));
    }
    return Outcome{worst <= 1e-6, fmt("max rel err %.2e (tol 1e-6)", worst)};
  });

  report(9, "q-Airy spectral zeta", [] {
    const double q = 0.5;
    double worst = 0.0;
    auto rec = qairy_zeta_recurrence(q, 6);
    for (unsigned N = 1; N <= 6; ++N) worst = std::max(worst, rel(qairy_zeta(q, N), rec[N - 1]));
    const ExactRational qe(1, 2);
    auto rece = qairy_zeta_recurrence(qe, 6);
    bool exact = true;
    for (unsigned N = 1; N <= 6; ++N) exact = exact && qairy_zeta(qe, N) == rece[N - 1];
    CouplingZeros z = coupling_zeros(CouplingProblem::make(qairy_sequence(q)), 100, 1e-13);
    double d2 = 0.0;
    for (auto it = z.zeta.rbegin(); it != z.zeta.rend(); ++it) d2 += std::pow(*it, -4.0);
    const double e2 = std::abs(d2 - qairy_zeta(q, 2));
    const double w = 0.1;
    EvalResult F = f_infinite(qairy_sequence(q, w), 1e-15);
    const double e3 = std::abs(F.value - qairy(q, w * w).value);
    const bool ok = worst <= 1e-12 && exact && e2 <= 1e-8 && e3 <= 1e-12;
    return Outcome{ok, fmt("closed form vs recurrence %.2e, D_2 vs roots %.2e, F vs A_q %.2e", worst, e2, e3) +
                           (exact ? ", exact match" : ", exact MISMATCH")};
  });

  report(10, "Rayleigh sums", [] {
    double worst = 0.0;
    for (double nu : {0.0, 0.5, 1.0, 3.0})
      worst = std::max(worst, rel(rayleigh_sigma(nu, 1).value, 1.0 / (4.0 * (nu + 1.0))));
    auto g = bessel_product_coefficients(0.0, 2);
    auto sigma = zeta_recurrence<double>(g);
    const double e = rel(rayleigh_sigma(0.0, 2).value, sigma[1]);
    return Outcome{worst <= 1e-12 && e <= 1e-12, fmt("sigma(2) rel err %.2e, sigma_0(4) rel err %.2e", worst, e)};
  });

  report(11, "Hadamard product vs direct evaluation", [&] {
    if (!have_hadamard) return Outcome{false, "no zeros"};
    double worst = 0.0;
    for (double x : {-1.5, -0.5, 0.5, 1.5}) {
      HadamardValue hv = hadamard_eval(x, hb.f0, hb.b, below, 200.5, &J.lambda());
      worst = std::max(worst, std::abs(hv.value - regularized_char(J, x, 1e-12).value));
    }
    return Outcome{worst <= 1e-5, std::to_string(below.size()) + fmt(" zeros, max err %.2e (tol 1e-5)", worst)};
  });

  report(12, "shift identity", [&] {
    double worst = 0.0;
    for (double eps : {0.1, 0.3}) {
      // S = Σ ε/(n(n+ε)) = ψ(1+ε) + γ; Φ(-ε)^{-1} = Γ(1+ε) e^{γε} for λ_n = n
      const double S = oracle::digamma(1.0 + eps) + kGamma;
      const double inv_phi = std::tgamma(1.0 + eps) * std::exp(kGamma * eps);
      JacobiSpec Js = J.shifted(eps);
      for (cplx z : {cplx(0.4), cplx(-1.2), cplx(2.5), cplx(0.3, 0.6)}) {
        cplx lhs = regularized_char(Js, z, 1e-11).value;
        cplx rhs = regularized_char(J, z - eps, 1e-11).value * inv_phi * std::exp(-z * S);
        worst = std::max(worst, rel(lhs, rhs));
      }
    }
    return Outcome{worst <= 1e-8, fmt("max rel err %.2e (tol 1e-8)", worst)};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
