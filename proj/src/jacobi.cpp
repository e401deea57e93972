#include "charfact/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "charfact/error.hpp"
#include "special.hpp"
#include "tail.hpp"

namespace charfact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void rescale1(cplx& a, std::int64_t& exp) {
  cplx dummy = 0.0;
  detail::rescale(a, dummy, exp);
}

// Kahan summation for Σ 1/λ_k, which multiplies z in the exponent.
void kahan_add(cplx& sum, cplx& comp, cplx v) {
  cplx y = v - comp;
  cplx t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

// mantissa * exp(L) split into a mantissa near 1 and a power of two.
ScaledValue with_exponential(cplx mantissa, double error, std::int64_t exponent, cplx L) {
  const double q = std::floor(L.real() / std::numbers::ln2);
  const cplx f = std::exp(cplx(L.real() - q * std::numbers::ln2, L.imag()));
  ScaledValue out;
  out.mantissa = mantissa * f;
  out.error = error * std::abs(f);
  out.exponent = exponent + static_cast<std::int64_t>(q);
  const double m = std::max(std::abs(out.mantissa.real()), std::abs(out.mantissa.imag()));
  if (m > 0.0 && std::isfinite(m)) {
    int k = 0;
    std::frexp(m, &k);
    out.mantissa = detail::ldexp(out.mantissa, -k);
    out.error = std::ldexp(out.error, -k);
    out.exponent += k;
  }
  if (std::isnan(out.error)) out.error = kInf;
  return out;
}

}  // namespace

namespace detail {

PhiTail phi_tail(const Sequence& lambda, cplx z, std::size_t n) {
  if (z == cplx(0.0)) return {};
  const double m = lambda.abs_lower_bound(n + 1);
  const double az = std::abs(z);
  if (!(m > 2.0 * az)) return {0.0, kInf};
  const double rho = az / m;
  const double b2 = lambda.inverse_abs_power_tail_bound(n + 1, 2);
  if (!std::isfinite(b2)) return {0.0, kInf};
  // log[(1 - u) e^u] = -Σ_{p>=2} u^p / p, summed exactly up to p = J.
  cplx L = 0.0;
  int J = 1;
  cplx zp = z;
  for (int p = 2; p <= 7; ++p) {
    zp *= z;
    auto s = lambda.inverse_power_tail_sum(n + 1, p);
    if (!s) break;
    L -= zp * *s / static_cast<double>(p);
    J = p;
  }
  const double rem =
      std::pow(az, J + 1) / (J + 1) * b2 / std::pow(m, J - 1) / (1.0 - rho);
  return {L, std::expm1(rem)};
}

}  // namespace detail

// ---- JacobiSpec -------------------------------------------------------------

JacobiSpec::JacobiSpec(Sequence lambda, Sequence w, JacobiFlags flags, std::size_t sample)
    : lambda_(std::move(lambda)), w_(std::move(w)), flags_(flags) {
  if (w_.is_finite()) throw DomainViolation("w must be an infinite sequence");
  if (lambda_.is_finite()) throw DomainViolation("lambda must be an infinite sequence");
  for (std::size_t k = 1; k <= sample; ++k) {
    cplx l = lambda_.term(k), w = w_.term(k);
    if (l.imag() != 0.0 || !std::isfinite(l.real())) {
      throw DomainViolation("lambda_" + std::to_string(k) + " is not a finite real number");
    }
    if (w.imag() != 0.0 || !std::isfinite(w.real())) {
      throw DomainViolation("w_" + std::to_string(k) + " is not a finite real number");
    }
    if (w.real() == 0.0) throw DomainViolation("w_" + std::to_string(k) + " is zero");
  }
}

JacobiSpec JacobiSpec::certified(Sequence lambda, Sequence w, std::size_t sample) {
  JacobiSpec J(std::move(lambda), std::move(w), {}, sample);
  bool positive = true;
  for (std::size_t k = 1; k <= sample; ++k) positive = positive && J.lambda_.term(k).real() > 0.0;
  const bool inv2 = std::isfinite(J.lambda_.inverse_abs_power_tail_bound(1, 2));
  const bool pairs = std::isfinite(J.argument(0.0).pair_tail_bound(1));
  if (!positive) throw DomainViolation("lambda_n > 0 fails on the sampled range");
  if (!inv2) throw DomainViolation("no finite bound on sum lambda_n^-2");
  if (!pairs) throw DomainViolation("no finite bound on sum w_n^2/(lambda_n lambda_{n+1})");
  J.flags_ = {true, true};
  return J;
}

Sequence JacobiSpec::argument(cplx z) const {
  return Sequence::product(Sequence::gamma_squared(w_), Sequence::shifted_inverse(z, lambda_));
}

JacobiSpec JacobiSpec::shifted(double eps) const {
  JacobiSpec out = *this;
  out.lambda_ = Sequence::offset(eps, lambda_);
  if (eps < 0.0) out.flags_.lambda_positive_divergent = false;
  return out;
}

oracle::TridiagMatrix JacobiSpec::truncation(std::size_t n) const {
  oracle::TridiagMatrix m;
  for (std::size_t k = 1; k <= n; ++k) {
    m.diag.push_back(lambda_.term(k).real());
    if (k < n) m.offdiag.push_back(w_.term(k).real());
  }
  return m;
}

std::string JacobiSpec::str() const { return "jacobi(" + lambda_.str() + "," + w_.str() + ")"; }

std::vector<double> gamma_sequence(const Sequence& w, std::size_t n) {
  std::vector<double> g;
  g.reserve(n);
  double cur = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    g.push_back(cur);
    cur = w.term(k).real() / cur;
  }
  return g;
}

// ---- F_J, Φ_λ ---------------------------------------------------------------

EvalResult char_function(const JacobiSpec& J, cplx z, double tol, const EvalOptions& opts) {
  const double az = std::abs(z);
  for (std::size_t k = 1; k <= opts.policy.max_terms; ++k) {
    if (k % 1024 == 0 && J.lambda().abs_lower_bound(k) > az + 1.0) break;
    cplx l = J.lambda().term(k);
    if (std::abs(l - z) < opts.pole_distance) {
      throw PoleAt(l.real(), l.imag(),
                   "z is within " + format_number(opts.pole_distance) + " of lambda_" +
                       std::to_string(k) + " = " + format_number(l));
    }
  }
  EvalResult r = f_infinite(J.argument(z), tol, opts.policy);
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
    throw PoleAt(z.real(), z.imag(), "F_J is not finite at z");
  }
  return r;
}

EvalResult phi_lambda(const Sequence& lambda, cplx z, double tol, const TruncationPolicy& policy) {
  if (z == cplx(0.0)) return {1.0, 0.0, 0};
  cplx prod = 1.0, inv = 0.0, comp = 0.0;
  std::int64_t exp = 0;
  std::size_t done = 0;
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 1);
  for (;;) {
    n = std::min(n, policy.max_terms);
    for (std::size_t k = done + 1; k <= n; ++k) {
      cplx l = lambda.term(k);
      if (l == cplx(0.0)) throw DomainViolation("lambda_" + std::to_string(k) + " is zero");
      prod *= 1.0 - z / l;
      rescale1(prod, exp);
      kahan_add(inv, comp, 1.0 / l);
    }
    done = n;
    const detail::PhiTail tail = detail::phi_tail(lambda, z, n);
    if (std::isfinite(tail.rel_error)) {
      ScaledValue v = with_exponential(prod, 0.0, exp, z * inv + tail.log_value);
      v.error = std::abs(v.mantissa) * tail.rel_error;
      v.terms_used = n;
      if (v.error_bound() <= tol) return {v.value(), v.error_bound(), n};
    }
    if (n >= policy.max_terms) {
      throw NonConvergent("phi_lambda: tol not reached within " + std::to_string(n) + " terms");
    }
    n *= 2;
  }
}

// ---- H_J --------------------------------------------------------------------

TruncatedH::TruncatedH(const JacobiSpec& J, cplx z) : J_(&J), arg_(J.argument(z)), z_(z) {
  cplx l1 = J.lambda().term(1);
  if (l1 == cplx(0.0)) throw DomainViolation("lambda_1 is zero");
  s_ = 1.0 - z / l1;
  inv_sum_ = 1.0 / l1;
}

void TruncatedH::advance(std::size_t n) {
  const Sequence& lam = J_->lambda();
  const Sequence& w = J_->w();
  cplx l_prev = lam.term(n_);
  for (std::size_t k = n_ + 1; k <= n; ++k) {
    const cplx l = lam.term(k);
    if (l == cplx(0.0)) throw DomainViolation("lambda_" + std::to_string(k) + " is zero");
    const cplx wk = w.term(k - 1);
    cplx next = (1.0 - z_ / l) * s_ - (wk * wk / (l_prev * l)) * s_prev_;
    s_prev_ = s_;
    s_ = next;
    detail::rescale(s_, s_prev_, exp_);
    kahan_add(inv_sum_, inv_comp_, 1.0 / l);
    l_prev = l;
  }
  n_ = std::max(n_, n);
}

ScaledValue TruncatedH::estimate() const {
  const Sequence& lam = J_->lambda();
  const detail::TailFactor g0 = detail::tail_factor(arg_, n_);
  const detail::TailFactor g1 = detail::tail_factor(arg_, n_ + 1);
  const cplx ln = lam.term(n_), ln1 = lam.term(n_ + 1), wn = J_->w().term(n_);
  const cplx c = wn * wn / (ln * (ln1 - z_));
  const detail::PhiTail pt = detail::phi_tail(lam, z_, n_);
  if (!std::isfinite(std::abs(c)) || !std::isfinite(g0.error) || !std::isfinite(g1.error) ||
      !std::isfinite(pt.rel_error)) {
    ScaledValue v = with_exponential(s_, 0.0, exp_, z_ * inv_sum_);
    v.error = kInf;
    v.terms_used = n_;
    return v;
  }
  const cplx B = s_ * g0.value - c * s_prev_ * g1.value;
  const double errB = std::abs(s_) * g0.error + std::abs(c) * std::abs(s_prev_) * g1.error;
  const double err = pt.rel_error * (std::abs(B) + errB) + errB;
  ScaledValue v = with_exponential(B, err, exp_, z_ * inv_sum_ + pt.log_value);
  v.terms_used = n_;
  return v;
}

EvalResult regularized_char(const JacobiSpec& J, cplx z, double tol, const TruncationPolicy& policy) {
  if (!(tol > 0.0)) throw DomainViolation("tol must be positive");
  TruncatedH th(J, z);
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 2);
  for (;;) {
    n = std::min(n, policy.max_terms);
    th.advance(n);
    ScaledValue v = th.estimate();
    if (v.error_bound() <= tol) return {v.value(), v.error_bound(), n};
    if (n >= policy.max_terms) {
      throw NonConvergent("H_J: tol " + format_number(tol) + " not reached within " +
                          std::to_string(n) + " terms (bound " + format_number(v.error_bound()) +
                          ")");
    }
    n *= 2;
  }
}

ScaledValue regularized_char_scaled(const JacobiSpec& J, cplx z, double rel_tol,
                                    const TruncationPolicy& policy) {
  TruncatedH th(J, z);
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 2);
  for (;;) {
    n = std::min(n, policy.max_terms);
    th.advance(n);
    ScaledValue v = th.estimate();
    if (v.error <= rel_tol * std::abs(v.mantissa)) return v;
    if (n >= policy.max_terms) {
      throw NonConvergent("H_J: relative tol " + format_number(rel_tol) + " not reached within " +
                          std::to_string(n) + " terms");
    }
    n *= 2;
  }
}

ScaledValue regularized_char_sign(const JacobiSpec& J, double x, const TruncationPolicy& policy) {
  TruncatedH th(J, x);
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 2);
  for (;;) {
    n = std::min(n, policy.max_terms);
    th.advance(n);
    ScaledValue v = th.estimate();
    if (v.certain_sign() != 0 || n >= policy.max_terms) return v;
    n *= 2;
  }
}

std::vector<GrowthSample> growth_scan(const JacobiSpec& J, std::span<const double> radii,
                                      int samples) {
  std::vector<GrowthSample> out;
  samples = std::max(samples, 1);
  for (double r : radii) {
    double best = -kInf;
    const int count = r == 0.0 ? 1 : samples;
    for (int j = 0; j < count; ++j) {
      const double th = 2.0 * std::numbers::pi * j / samples;
      ScaledValue v = regularized_char_scaled(J, std::polar(r, th), 1e-6);
      double la = std::log(std::abs(v.mantissa)) + static_cast<double>(v.exponent) * std::numbers::ln2;
      best = std::max(best, la);
    }
    GrowthSample g;
    g.radius = r;
    g.max_abs = std::exp(best);
    g.log_max_over_r2 = r > 0.0 ? best / (r * r) : 0.0;
    out.push_back(g);
  }
  return out;
}

}  // namespace charfact
