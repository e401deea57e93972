#include "charfact/fcal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "charfact/error.hpp"
#include "special.hpp"
#include "tail.hpp"

namespace charfact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> binomial_table(int n) {
  std::vector<std::vector<double>> b(n + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i <= n; ++i) {
    b[i][0] = 1.0;
    for (int j = 1; j <= i; ++j) b[i][j] = b[i - 1][j - 1] + (j < i ? b[i - 1][j] : 0.0);
  }
  return b;
}

double pair_abs_sum(std::span<const cplx> x) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) s += std::abs(x[k] * x[k + 1]);
  return s;
}

SeriesResult assemble_series(const std::vector<cplx>& c, int max_order, double s) {
  SeriesResult r;
  r.pair_sum = s;
  cplx acc = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    acc -= c[n];
    r.partial_sums.push_back(acc);
  }
  r.value = acc;
  const double m = static_cast<double>(max_order + 1);
  r.tail_bound = s == 0.0 ? 0.0 : std::pow(s, m) / (m * (1.0 - s));
  return r;
}

}  // namespace

namespace detail {

TailFactor tail_factor(const Sequence& x, std::size_t j) {
  const double tau = x.pair_tail_bound(j + 1);
  if (!std::isfinite(tau)) return {1.0, kInf};
  if (auto sigma = x.pair_tail_sum(j + 1)) return {1.0 - *sigma, std::expm1(tau) - tau};
  return {1.0, std::expm1(tau)};
}

}  // namespace detail

TruncationPolicy TruncationPolicy::from_environment() {
  TruncationPolicy p;
  if (const char* env = std::getenv("CHARFACT_MAX_TRUNCATION")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) p.max_terms = static_cast<std::size_t>(v);
  }
  return p;
}

cplx ScaledValue::value() const {
  if (exponent > 4096) return {kInf, kInf};
  if (exponent < -4096) return 0.0;
  return detail::ldexp(mantissa, static_cast<int>(exponent));
}

double ScaledValue::error_bound() const {
  if (!std::isfinite(error)) return error;
  if (exponent > 4096) return error == 0.0 ? 0.0 : kInf;
  if (exponent < -4096) return 0.0;
  return std::ldexp(error, static_cast<int>(exponent));
}

int ScaledValue::certain_sign() const {
  const double re = mantissa.real();
  if (!(std::abs(re) > error)) return 0;
  return re > 0.0 ? 1 : -1;
}

cplx f_from_pairs(std::span<const cplx> pairs) {
  cplx d_prev = 1.0, d = 1.0;
  for (const cplx& p : pairs) {
    cplx next = d - p * d_prev;
    d_prev = d;
    d = next;
  }
  return d;
}

cplx f_finite(std::span<const cplx> x) {
  cplx d_prev = 1.0, d = 1.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    cplx next = d - x[k - 1] * x[k] * d_prev;
    d_prev = d;
    d = next;
  }
  return d;
}

TruncatedF::TruncatedF(Sequence x) : x_(std::move(x)) {}

void TruncatedF::advance(std::size_t n) {
  if (auto len = x_.length()) n = std::min(n, std::max<std::size_t>(*len, 1));
  for (std::size_t k = n_ + 1; k <= n; ++k) {
    cplx next = d_ - x_.pair(k - 1) * d_prev_;
    d_prev_ = d_;
    d_ = next;
    detail::rescale(d_, d_prev_, exp_);
  }
  n_ = std::max(n_, n);
}

cplx TruncatedF::truncated_value() const {
  return ScaledValue{d_, exp_, 0.0, n_}.value();
}

ScaledValue TruncatedF::estimate() const {
  ScaledValue out{d_, exp_, 0.0, n_};
  if (auto len = x_.length(); len && n_ >= *len) return out;
  const detail::TailFactor g0 = detail::tail_factor(x_, n_);
  const detail::TailFactor g1 = detail::tail_factor(x_, n_ + 1);
  const cplx p = x_.pair(n_);
  out.mantissa = d_ * g0.value - p * d_prev_ * g1.value;
  out.error = std::abs(d_) * g0.error;
  if (p != cplx(0.0)) out.error += std::abs(p) * std::abs(d_prev_) * g1.error;
  return out;
}

EvalResult f_infinite(const Sequence& x, double tol, const TruncationPolicy& policy) {
  if (!(tol > 0.0)) throw DomainViolation("tol must be positive");
  if (auto len = x.length()) {
    return {f_finite(x.head(*len)), 0.0, *len};
  }
  if (!std::isfinite(x.pair_tail_bound(1))) {
    throw NonConvergent("no finite bound on the pair-product sum of " + x.str());
  }
  TruncatedF tf(x);
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 1);
  for (;;) {
    n = std::min(n, policy.max_terms);
    tf.advance(n);
    ScaledValue est = tf.estimate();
    if (est.error_bound() <= tol) return {est.value(), est.error_bound(), n};
    if (n >= policy.max_terms) {
      throw NonConvergent("tol " + format_number(tol) + " not reached within " +
                          std::to_string(policy.max_terms) + " terms (bound " +
                          format_number(est.error_bound()) + ")");
    }
    n *= 2;
  }
}

ScaledValue f_infinite_scaled(const Sequence& x, double rel_tol, const TruncationPolicy& policy) {
  if (auto len = x.length()) {
    TruncatedF tf(x);
    tf.advance(*len);
    return tf.estimate();
  }
  if (!std::isfinite(x.pair_tail_bound(1))) {
    throw NonConvergent("no finite bound on the pair-product sum of " + x.str());
  }
  TruncatedF tf(x);
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 1);
  for (;;) {
    n = std::min(n, policy.max_terms);
    tf.advance(n);
    ScaledValue est = tf.estimate();
    if (est.error <= rel_tol * std::abs(est.mantissa)) return est;
    if (n >= policy.max_terms) {
      throw NonConvergent("relative tol " + format_number(rel_tol) + " not reached within " +
                          std::to_string(policy.max_terms) + " terms");
    }
    n *= 2;
  }
}

int f_sign(const Sequence& x, const TruncationPolicy& policy, std::size_t* terms_used) {
  TruncatedF tf(x);
  std::size_t n = std::max<std::size_t>(policy.initial_terms, 1);
  const bool finite = x.is_finite();
  for (;;) {
    n = std::min(n, policy.max_terms);
    tf.advance(n);
    ScaledValue est = tf.estimate();
    if (terms_used) *terms_used = tf.terms();
    if (int s = est.certain_sign()) return s;
    if (finite || n >= policy.max_terms) return 0;
    n *= 2;
  }
}

EvalResult log_f(const Sequence& x, double tol, const TruncationPolicy& policy) {
  const double s = x.pair_tail_bound(1);
  if (!(s < std::log(2.0))) {
    throw DomainViolation("log 𝔉 needs sum |x_k x_{k+1}| < log 2, bound is " + format_number(s));
  }
  // |𝔉 - 1| <= e^s - 1 < 1 keeps 𝔉 in the principal sheet and |𝔉| >= 2 - e^s.
  const double floor = 2.0 - std::exp(s);
  EvalResult r = f_infinite(x, std::min(tol * floor * 0.5, 0.25 * floor), policy);
  double err = r.error_bound / (floor - r.error_bound);
  return {std::log(r.value), err, r.terms_used};
}

std::vector<cplx> log_coefficients(std::span<const cplx> pairs, int max_order) {
  const int N = max_order;
  std::vector<cplx> c(N + 1, 0.0);
  if (N <= 0) return c;
  const auto binom = binomial_table(2 * N);
  // v[m][u]: weighted compositions ending at the current position with last
  // part m and total order u.
  std::vector<std::vector<cplx>> v(N + 1, std::vector<cplx>(N + 1, 0.0));
  std::vector<std::vector<cplx>> w = v;
  std::vector<cplx> pw(N + 1);
  bool live = false;
  for (const cplx& p : pairs) {
    for (auto& row : w) std::fill(row.begin(), row.end(), cplx(0.0));
    if (p == cplx(0.0)) {
      std::swap(v, w);
      live = false;
      continue;
    }
    pw[0] = 1.0;
    for (int m = 1; m <= N; ++m) pw[m] = pw[m - 1] * p;
    for (int m2 = 1; m2 <= N; ++m2) {
      w[m2][m2] += pw[m2] / static_cast<double>(m2);
      if (!live) continue;
      for (int m = 1; m + m2 <= N; ++m) {
        const double b = binom[m + m2 - 1][m2];
        for (int u = m; u + m2 <= N; ++u) {
          if (v[m][u] != cplx(0.0)) w[m2][u + m2] += v[m][u] * b * pw[m2];
        }
      }
    }
    for (int m2 = 1; m2 <= N; ++m2) {
      for (int u = m2; u <= N; ++u) c[u] += w[m2][u];
    }
    std::swap(v, w);
    live = true;
  }
  return c;
}

SeriesResult log_f_series(std::span<const cplx> x, int max_order) {
  if (max_order < 1) throw DomainViolation("series order must be >= 1");
  const double s = pair_abs_sum(x);
  if (!(s < 1.0)) {
    throw DomainViolation("log series needs sum |x_k x_{k+1}| < 1, got " + format_number(s));
  }
  std::vector<cplx> pairs;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) pairs.push_back(x[k] * x[k + 1]);
  SeriesResult r = assemble_series(log_coefficients(pairs, max_order), max_order, s);
  r.terms_used = x.size();
  return r;
}

SeriesResult log_f_series(const Sequence& x, int max_order, double inner_tol,
                          const TruncationPolicy& policy) {
  if (auto len = x.length()) {
    auto head = x.head(*len);
    return log_f_series(head, max_order);
  }
  if (max_order < 1) throw DomainViolation("series order must be >= 1");
  const double s = x.pair_tail_bound(1);
  if (!(s < 1.0)) {
    throw DomainViolation("log series needs sum |x_k x_{k+1}| < 1, bound is " + format_number(s));
  }
  // Dropping pairs from index K on changes the truncated series by at most
  // Σ_N s^{N-1} τ_K <= τ_K / (1 - s).
  std::size_t K = std::max<std::size_t>(policy.initial_terms, 2);
  double dropped = x.pair_tail_bound(K) / (1.0 - s);
  while (dropped > inner_tol) {
    if (K >= policy.max_terms) {
      throw NonConvergent("log series: inner truncation did not reach " + format_number(inner_tol));
    }
    K = std::min(2 * K, policy.max_terms);
    dropped = x.pair_tail_bound(K) / (1.0 - s);
  }
  std::vector<cplx> pairs;
  pairs.reserve(K - 1);
  for (std::size_t k = 1; k < K; ++k) pairs.push_back(x.pair(k));
  SeriesResult r = assemble_series(log_coefficients(pairs, max_order), max_order, s);
  r.tail_bound += dropped;
  r.terms_used = K;
  return r;
}

}  // namespace charfact
