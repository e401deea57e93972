#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "charfact/error.hpp"
#include "charfact/jacobi.hpp"
#include "tail.hpp"

namespace charfact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sample {
  double z = 0.0;
  int sign = 0;
  double log_abs = 0.0;  // log2 |H|
  double scaled = 0.0;   // mantissa, aligned by exponent later
  std::int64_t exponent = 0;
};

class Scanner {
 public:
  Scanner(const JacobiSpec& J, const RootOptions& opts) : J_(J), opts_(opts) {}

  Sample eval(double z) const {
    ScaledValue v = regularized_char_sign(J_, z, opts_.policy);
    Sample s;
    s.z = z;
    s.sign = v.certain_sign();
    s.scaled = v.mantissa.real();
    s.exponent = v.exponent;
    s.log_abs = std::log2(std::abs(s.scaled)) + static_cast<double>(v.exponent);
    return s;
  }

  // Moves z slightly inside (z, limit) until the sign is certain.
  Sample eval_certain(double z, double step, double limit) const {
    Sample s = eval(z);
    for (int t = 1; s.sign == 0 && t <= 4; ++t) {
      double zz = z + step * (t / 7.0);
      if (zz >= limit) zz = z - step * (t / 7.0);
      s = eval(zz);
    }
    if (s.sign == 0) {
      throw NonConvergent("sign of H_J near " + format_number(z) +
                          " could not be certified within the truncation cap");
    }
    return s;
  }

  // Grid spacing at z: a fraction of the local gap between diagonal entries.
  double step(double z) {
    const Sequence& lam = J_.lambda();
    while (k_ < 100000 && lam.term(k_ + 1).real() <= z) ++k_;
    double gap = lam.term(k_ + 1).real() - lam.term(k_).real();
    if (!(gap > 0.0) || !std::isfinite(gap)) gap = 1.0;
    return gap / opts_.grid_per_unit;
  }

  std::vector<Sample> scan(double lo, double hi) {
    std::vector<Sample> out;
    double z = lo;
    for (;;) {
      const double h = step(z);
      out.push_back(eval_certain(z, h, hi));
      if (z >= hi) break;
      z = std::min(z + h, hi);
    }
    return out;
  }

  std::vector<Sample> scan_uniform(double lo, double hi, int points) const {
    std::vector<Sample> out;
    const double h = (hi - lo) / points;
    for (int i = 0; i <= points; ++i) out.push_back(eval_certain(lo + i * h, h, hi));
    return out;
  }

  // Bisection to tol, then one secant step between the final bracket ends.
  void bisect(Sample a, Sample b, double tol, ZeroSet& zs) const {
    while (b.z - a.z > tol) {
      const double m = 0.5 * (a.z + b.z);
      if (m <= a.z || m >= b.z) break;
      Sample s = eval(m);
      if (s.sign == 0) break;  // the truncation cap limits the resolution here
      (s.sign == a.sign ? a : b) = s;
    }
    const std::int64_t e = std::max(a.exponent, b.exponent);
    const double fa = std::ldexp(a.scaled, static_cast<int>(a.exponent - e));
    const double fb = std::ldexp(b.scaled, static_cast<int>(b.exponent - e));
    double r = 0.5 * (a.z + b.z);
    if (fa != fb) {
      const double sec = a.z - fa * (b.z - a.z) / (fb - fa);
      if (sec >= a.z && sec <= b.z) r = sec;
    }
    zs.roots.push_back(r);
    zs.enclosures.push_back(std::max(r - a.z, b.z - r));
    zs.multiplicities.push_back(1);
  }

 private:
  const JacobiSpec& J_;
  const RootOptions& opts_;
  std::size_t k_ = 1;
};

}  // namespace

ZeroSet find_eigenvalues(const JacobiSpec& J, double lo, double hi, double tol,
                         const RootOptions& opts) {
  if (!(lo <= hi)) throw DomainViolation("empty window [" + format_number(lo) + "," + format_number(hi) + "]");
  if (!(tol > 0.0)) throw DomainViolation("tol must be positive");
  Scanner sc(J, opts);
  ZeroSet zs;
  const std::vector<Sample> g = sc.scan(lo, hi);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (g[i].sign != g[i + 1].sign) {
      sc.bisect(g[i], g[i + 1], tol, zs);
      continue;
    }
    // A dip in |H| without a sign change may hide a pair of close zeros.
    if (i == 0 || g[i - 1].sign != g[i].sign) continue;
    if (!(g[i].log_abs < g[i - 1].log_abs && g[i].log_abs < g[i + 1].log_abs)) continue;
    const double a = g[i - 1].z, b = g[i + 1].z;
    bool found = false;
    double deepest = g[i].log_abs;
    for (int level = 1; level <= opts.max_refinement && !found; ++level) {
      const std::vector<Sample> fine = sc.scan_uniform(a, b, 2 << level);
      for (std::size_t j = 0; j + 1 < fine.size(); ++j) {
        deepest = std::min(deepest, fine[j].log_abs);
        if (fine[j].sign != fine[j + 1].sign) {
          sc.bisect(fine[j], fine[j + 1], tol, zs);
          found = true;
        }
      }
    }
    const double ratio = std::exp2(deepest - std::max(g[i - 1].log_abs, g[i + 1].log_abs));
    if (!found && ratio < 1e-3) {
      throw GridTooCoarse("|H_J| dips to " + format_number(ratio) + " of its neighbours near " +
                          format_number(g[i].z) + " without a sign change; refine the grid");
    }
  }
  // Zeros found by refinement can interleave with later brackets.
  std::vector<std::size_t> idx(zs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return zs.roots[x] < zs.roots[y]; });
  ZeroSet sorted;
  for (auto i : idx) {
    sorted.roots.push_back(zs.roots[i]);
    sorted.enclosures.push_back(zs.enclosures[i]);
    sorted.multiplicities.push_back(zs.multiplicities[i]);
  }
  return sorted;
}

double spectrum_lower_bound(const JacobiSpec& J, std::size_t sample) {
  const Sequence& lam = J.lambda();
  const Sequence& w = J.w();
  double bound = kInf;
  double w_prev = 0.0;
  for (std::size_t k = 1; k <= sample; ++k) {
    const double wk = std::abs(w.term(k));
    bound = std::min(bound, lam.term(k).real() - w_prev - wk);
    w_prev = wk;
  }
  // Beyond the sample: λ_k >= |λ|_lower(k) when λ is eventually positive.
  if (auto env = w.upper_envelope()) {
    const double wsup = envelope_sup(*env, sample);
    const double lmin = lam.abs_lower_bound(sample + 1);
    if (std::isfinite(wsup) && lam.term(sample + 1).real() > 0.0) {
      bound = std::min(bound, lmin - 2.0 * wsup);
    }
  }
  return bound;
}

ZeroSet eigenvalues_below(const JacobiSpec& J, double cutoff, double tol, const RootOptions& opts) {
  const double lo = spectrum_lower_bound(J) - 1.0;
  if (!std::isfinite(lo)) throw DomainViolation("no finite lower bound on the spectrum");
  if (cutoff <= lo) return {};
  return find_eigenvalues(J, lo, cutoff, tol, opts);
}

int multiplicity_diagnostic(const JacobiSpec& J, double root, double h) {
  auto logabs = [&](double z) {
    ScaledValue v = regularized_char_scaled(J, z, 1e-6);
    return std::log2(std::abs(v.mantissa)) + static_cast<double>(v.exponent);
  };
  const double order = logabs(root + h) - logabs(root + h / 2);
  return std::max(1, static_cast<int>(std::lround(order)));
}

HadamardB hadamard_b(const JacobiSpec& J, const ZeroSet& zeros, double tol) {
  if (zeros.empty()) throw NotEnoughZeros("no zeros supplied");
  HadamardB out;
  EvalResult f0 = regularized_char(J, 0.0, tol);
  out.f0 = f0.value;
  if (std::abs(f0.value) <= 1e-8) {
    throw NotInvertible("J is not invertible (|H_J(0)| = " + format_number(std::abs(f0.value)) +
                        "); shift it by some eps first");
  }
  double sum = 0.0, comp = 0.0, dmax = 0.0, enc = 0.0;
  const std::size_t K = zeros.size();
  for (std::size_t n = 1; n <= K; ++n) {
    const double mu = zeros.roots[n - 1];
    if (mu == 0.0) throw NotInvertible("zero eigenvalue");
    const double d = 1.0 / J.lambda().term(n).real() - 1.0 / mu;
    if (2 * n > K) dmax = std::max(dmax, std::abs(d));
    if (n - 1 < zeros.enclosures.size()) enc += zeros.enclosures[n - 1] / (mu * mu);
    const double y = d - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  out.b = sum;
  out.zeros_used = K;
  // Differences decaying like n^-3 leave a tail of about K d_K / 2; the last
  // few d_n can round to zero, so take the largest over the upper half.
  out.tail_estimate = static_cast<double>(K) * dmax / 2.0 + enc;
  return out;
}

HadamardValue hadamard_eval(cplx z, cplx F0, double b, const ZeroSet& zeros, double cutoff,
                            const Sequence* lambda) {
  HadamardValue out;
  cplx log_sum = b * z;
  std::size_t K = 0;
  for (double mu : zeros.roots) {
    if (std::abs(mu) > cutoff) continue;
    ++K;
    const cplx u = z / mu;
    if (u == cplx(1.0)) {
      out.value = out.partial = 0.0;
      return out;
    }
    log_sum += std::log(1.0 - u) + u;
  }
  out.partial = F0 * std::exp(log_sum);
  if (!lambda) {
    out.value = out.partial;
    out.tail_bound = kInf;
    return out;
  }
  const detail::PhiTail pt = detail::phi_tail(*lambda, z, K);
  out.value = out.partial * std::exp(pt.log_value);
  out.tail_bound = std::abs(out.value) * pt.rel_error;
  return out;
}

}  // namespace charfact
