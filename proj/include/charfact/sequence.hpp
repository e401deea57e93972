#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace charfact {

using cplx = std::complex<double>;

/// Power-geometric envelope `scale * k^power * ratio^k`, valid for `k >= from`.
/// Used both as an upper bound on |x_k| (or |x_k x_{k+1}|) and as a lower
/// bound on |x_k - z| when a sequence plays the role of a diagonal.
struct Envelope {
  double scale = 0.0;
  double power = 0.0;
  double ratio = 1.0;
  std::size_t from = 1;
};

/// Upper bound on sum_{k >= max(n, from)} scale * k^power * ratio^k.
double envelope_tail_sum(const Envelope& env, std::size_t n);
/// Upper bound on sup_{k >= max(n, from)} scale * k^power * ratio^k.
double envelope_sup(const Envelope& env, std::size_t n);

/// A lazily evaluable complex sequence x_1, x_2, ... (1-based).
///
/// Sequences are immutable values sharing an expression tree; copying is
/// cheap and all accessors are reentrant. Finite sequences (explicit lists and
/// anything derived from them) are zero past their length.
///
/// The quantity that drives every 𝔉 computation is the pair product
/// x_k x_{k+1}; each node knows how to bound the tail sum of its magnitudes,
/// and some nodes can sum that tail in closed form.
class Sequence {
 public:
  class Node;

  Sequence();  // the all-zero sequence
  explicit Sequence(std::shared_ptr<const Node> node);

  static Sequence constant(cplx c);
  /// x_k = a k + b
  static Sequence linear(cplx a, cplx b);
  /// x_k = 1 / (nu + k)
  static Sequence reciprocal(cplx nu);
  /// x_k = q^(p k), principal branch of log q
  static Sequence geometric(cplx q, double p);
  static Sequence explicit_list(std::vector<cplx> values);
  /// x_k = s * inner_k
  static Sequence scaled(cplx s, const Sequence& inner);
  /// odd terms multiplied by s, even terms divided by s; pair products unchanged
  static Sequence alternating_scale(cplx s, const Sequence& inner);
  /// x_k = 1 / (diag_k - z)
  static Sequence shifted_inverse(cplx z, const Sequence& diag);
  /// x_k = num_k / (diag_k - z)
  static Sequence shifted_inverse(cplx z, const Sequence& num, const Sequence& diag);
  /// x_k = c + inner_k
  static Sequence offset(cplx c, const Sequence& inner);
  /// x_k = a_k b_k
  static Sequence product(const Sequence& a, const Sequence& b);
  /// x_k = gamma_k^2 for the alternating products built from w, so that
  /// x_k x_{k+1} = w_k^2.
  static Sequence gamma_squared(const Sequence& w);

  cplx term(std::size_t k) const;
  /// x_k x_{k+1}
  cplx pair(std::size_t k) const;
  std::vector<cplx> head(std::size_t n) const;

  /// Number of possibly non-zero terms, or nullopt for infinite sequences.
  std::optional<std::size_t> length() const;
  bool is_finite() const { return length().has_value(); }

  /// Upper bound on sum_{k>=n} |x_k x_{k+1}|; +inf when no bound is known.
  double pair_tail_bound(std::size_t n) const;
  /// Upper bound on sup_{k>=n} |x_k x_{k+1}|; +inf when no bound is known.
  double pair_sup_bound(std::size_t n) const;
  /// Closed-form sum_{k>=n} x_k x_{k+1} when the family admits one.
  std::optional<cplx> pair_tail_sum(std::size_t n) const;

  /// Closed-form sum_{k>=n} x_k^{-p}, p >= 2, when available.
  std::optional<cplx> inverse_power_tail_sum(std::size_t n, int p) const;
  /// Upper bound on sum_{k>=n} |x_k|^{-p}; +inf when unknown.
  double inverse_abs_power_tail_bound(std::size_t n, int p) const;
  /// Lower bound on inf_{k>=n} |x_k|; 0 when unknown.
  double abs_lower_bound(std::size_t n) const;

  std::optional<Envelope> upper_envelope() const;
  std::optional<Envelope> lower_envelope(cplx z) const;

  std::optional<cplx> constant_value() const;
  std::optional<cplx> constant_pair() const;
  /// (a, b) when x_k = a k + b exactly.
  std::optional<std::pair<cplx, cplx>> linear_coefficients() const;

  /// Canonical text in the sequence mini-language; round-trips through
  /// parse_sequence.
  std::string str() const;

  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

/// Internal node interface; exposed so that callers can plug in their own
/// families (e.g. from the Python bindings).
class Sequence::Node {
 public:
  virtual ~Node() = default;

  virtual cplx term(std::size_t k) const = 0;
  virtual cplx pair(std::size_t k) const { return term(k) * term(k + 1); }
  virtual std::optional<std::size_t> length() const { return std::nullopt; }

  virtual std::optional<Envelope> upper() const { return std::nullopt; }
  virtual std::optional<Envelope> pair_upper() const;
  virtual std::optional<Envelope> lower(cplx /*z*/) const { return std::nullopt; }

  virtual double pair_tail_bound(std::size_t n) const;
  virtual double pair_sup_bound(std::size_t n) const;
  virtual std::optional<cplx> pair_tail_sum(std::size_t /*n*/) const { return std::nullopt; }

  virtual std::optional<cplx> inverse_power_tail_sum(std::size_t /*n*/, int /*p*/) const {
    return std::nullopt;
  }
  virtual double inverse_abs_power_tail_bound(std::size_t n, int p) const;
  virtual double abs_lower_bound(std::size_t n) const;

  virtual std::optional<cplx> constant_value() const { return std::nullopt; }
  virtual std::optional<cplx> constant_pair() const;
  virtual std::optional<std::pair<cplx, cplx>> linear_coefficients() const {
    return std::nullopt;
  }

  virtual std::string str() const = 0;
};

/// Parsed `name(arg, ...)` call from the mini-language; arguments are kept as
/// raw text so that callers can interpret nested specs or numbers.
struct SpecCall {
  std::string name;
  std::vector<std::string> args;
};

SpecCall parse_spec_call(std::string_view text);
/// Parses a real or complex literal: `1.5`, `-2e-3`, `0.5+2i`, `-i`, `3i`.
cplx parse_number(std::string_view text);
std::string format_number(cplx value);

/// Parses the sequence mini-language:
///   constant(c) | linear(a,b) | reciprocal(nu) | geometric(q,p)
///   | explicit([x1, x2, ...]) | explicit(x1, x2, ...)
///   | scale(s, spec) | altscale(s, spec)
///   | shiftinv(z, diag) | shiftinv(z, num, diag) | product(a, b)
///   | offset(c, spec) | gamma2(w)
Sequence parse_sequence(std::string_view text);

}  // namespace charfact
