#include "charfact/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "charfact/error.hpp"
#include "special.hpp"

namespace charfact {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Products of bounds where 0 * inf must stay 0.
double bound_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

double envelope_at(const Envelope& e, double k) {
  return e.scale * std::pow(k, e.power) * std::pow(e.ratio, k);
}

double envelope_inf(const Envelope& e, std::size_t m) {
  if (e.scale == 0.0) return 0.0;
  const double km = static_cast<double>(m);
  if (e.ratio > 1.0) {
    if (e.power >= 0.0) return envelope_at(e, km);
    double kstar = -e.power / std::log(e.ratio);
    return envelope_at(e, std::max(km, kstar));
  }
  if (e.ratio == 1.0 && e.power >= 0.0) return envelope_at(e, km);
  return 0.0;
}

// Sum of |pair(k)| for k in [n, stop), or the max when `take_max`.
template <class F>
double head_fold(std::size_t n, std::size_t stop, F&& f, bool take_max) {
  double acc = 0.0;
  for (std::size_t k = n; k < stop; ++k) {
    double v = f(k);
    acc = take_max ? std::max(acc, v) : acc + v;
  }
  return acc;
}

// For pair products bounded by factor / ((k + c)(k + 1 + c)) once k + c > 0,
// the tail telescopes to factor / (k + c).
double telescoped_tail(const Sequence::Node& node, std::size_t n, double c, double factor) {
  std::size_t k1 = n;
  if (static_cast<double>(k1) + c < 0.5) k1 = static_cast<std::size_t>(std::ceil(0.5 - c));
  k1 = std::max(k1, n);
  double head = head_fold(n, k1, [&](std::size_t k) { return std::abs(node.pair(k)); }, false);
  return head + factor / (static_cast<double>(k1) + c);
}

double telescoped_sup(const Sequence::Node& node, std::size_t n, double c, double factor) {
  std::size_t k1 = n;
  if (static_cast<double>(k1) + c < 0.5) k1 = static_cast<std::size_t>(std::ceil(0.5 - c));
  k1 = std::max(k1, n);
  double head = head_fold(n, k1, [&](std::size_t k) { return std::abs(node.pair(k)); }, true);
  double t = static_cast<double>(k1) + c;
  return std::max(head, factor / (t * (t + 1.0)));
}

using NodePtr = std::shared_ptr<const Sequence::Node>;

class ConstantNode final : public Sequence::Node {
 public:
  explicit ConstantNode(cplx c) : c_(c) {}
  cplx term(std::size_t) const override { return c_; }
  std::optional<Envelope> upper() const override { return Envelope{std::abs(c_), 0.0, 1.0, 1}; }
  std::optional<Envelope> lower(cplx z) const override {
    double d = std::abs(c_ - z);
    if (d == 0.0) return std::nullopt;
    return Envelope{d, 0.0, 1.0, 1};
  }
  std::optional<cplx> pair_tail_sum(std::size_t) const override {
    if (c_ == cplx(0.0)) return cplx(0.0);
    return std::nullopt;
  }
  std::optional<cplx> constant_value() const override { return c_; }
  std::optional<std::pair<cplx, cplx>> linear_coefficients() const override {
    return std::pair<cplx, cplx>{0.0, c_};
  }
  std::string str() const override { return "constant(" + format_number(c_) + ")"; }

 private:
  cplx c_;
};

class LinearNode final : public Sequence::Node {
 public:
  LinearNode(cplx a, cplx b) : a_(a), b_(b), shift_((b / a).real()) {}
  cplx term(std::size_t k) const override { return a_ * static_cast<double>(k) + b_; }
  std::optional<Envelope> upper() const override {
    return Envelope{std::abs(a_) + std::abs(b_), 1.0, 1.0, 1};
  }
  std::optional<Envelope> lower(cplx z) const override {
    // |a k + b - z| = |a| |k + c| >= |a| (k + Re c)
    double cr = ((b_ - z) / a_).real();
    if (cr >= 0.0) return Envelope{std::abs(a_), 1.0, 1.0, 1};
    auto k0 = static_cast<std::size_t>(std::ceil(-2.0 * cr));
    return Envelope{0.5 * std::abs(a_), 1.0, 1.0, std::max<std::size_t>(k0, 1)};
  }
  double abs_lower_bound(std::size_t n) const override {
    double t = static_cast<double>(n) + shift_;
    if (t > 0.0) return std::abs(a_) * t;
    return Node::abs_lower_bound(n);
  }
  std::optional<cplx> inverse_power_tail_sum(std::size_t n, int p) const override {
    try {
      return std::pow(a_, -p) * detail::hurwitz_zeta(p, static_cast<double>(n) + b_ / a_);
    } catch (const DomainViolation&) {
      return std::nullopt;
    }
  }
  double inverse_abs_power_tail_bound(std::size_t n, int p) const override {
    double t = static_cast<double>(n) + shift_;
    if (t > 0.5 && p >= 2) {
      return std::pow(std::abs(a_), -p) * (std::pow(t, -p) + std::pow(t, 1 - p) / (p - 1));
    }
    return Node::inverse_abs_power_tail_bound(n, p);
  }
  std::optional<std::pair<cplx, cplx>> linear_coefficients() const override {
    return std::pair<cplx, cplx>{a_, b_};
  }
  std::string str() const override {
    return "linear(" + format_number(a_) + "," + format_number(b_) + ")";
  }

 private:
  cplx a_, b_;
  double shift_;
};

class ReciprocalNode final : public Sequence::Node {
 public:
  explicit ReciprocalNode(cplx nu) : nu_(nu) {}
  cplx term(std::size_t k) const override { return 1.0 / (static_cast<double>(k) + nu_); }
  std::optional<Envelope> upper() const override {
    double cr = nu_.real();
    if (cr >= 0.0) return Envelope{1.0, -1.0, 1.0, 1};
    auto k0 = static_cast<std::size_t>(std::ceil(-2.0 * cr));
    return Envelope{2.0, -1.0, 1.0, std::max<std::size_t>(k0, 1)};
  }
  double pair_tail_bound(std::size_t n) const override {
    return telescoped_tail(*this, n, nu_.real(), 1.0);
  }
  double pair_sup_bound(std::size_t n) const override {
    return telescoped_sup(*this, n, nu_.real(), 1.0);
  }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override {
    return 1.0 / (static_cast<double>(n) + nu_);
  }
  std::string str() const override { return "reciprocal(" + format_number(nu_) + ")"; }

 private:
  cplx nu_;
};

class GeometricNode final : public Sequence::Node {
 public:
  GeometricNode(cplx q, double p) : q_(q), p_(p), log_(std::log(q)), modulus_(std::exp(p * log_.real())) {}
  cplx term(std::size_t k) const override { return std::exp(p_ * static_cast<double>(k) * log_); }
  cplx pair(std::size_t k) const override {
    return std::exp(p_ * static_cast<double>(2 * k + 1) * log_);
  }
  std::optional<Envelope> upper() const override { return Envelope{1.0, 0.0, modulus_, 1}; }
  std::optional<Envelope> lower(cplx z) const override {
    if (z == cplx(0.0)) return Envelope{1.0, 0.0, modulus_, 1};
    if (modulus_ <= 1.0) return std::nullopt;
    // |x_k - z| >= Q^k - |z| >= Q^k / 2 once Q^k >= 2|z|
    double k0 = std::ceil(std::log(2.0 * std::abs(z)) / std::log(modulus_));
    return Envelope{0.5, 0.0, modulus_, static_cast<std::size_t>(std::max(1.0, k0))};
  }
  double pair_tail_bound(std::size_t n) const override {
    if (modulus_ >= 1.0) return kInf;
    double q2 = modulus_ * modulus_;
    return std::pow(modulus_, 2.0 * static_cast<double>(n) + 1.0) / (1.0 - q2);
  }
  double pair_sup_bound(std::size_t n) const override {
    if (modulus_ > 1.0) return kInf;
    return std::pow(modulus_, 2.0 * static_cast<double>(n) + 1.0);
  }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override {
    if (modulus_ >= 1.0) return std::nullopt;
    return pair(n) / (1.0 - std::exp(2.0 * p_ * log_));
  }
  std::optional<cplx> inverse_power_tail_sum(std::size_t n, int p) const override {
    cplx ratio = std::exp(-static_cast<double>(p) * p_ * log_);
    if (std::abs(ratio) >= 1.0) return std::nullopt;
    return std::exp(-static_cast<double>(p) * p_ * static_cast<double>(n) * log_) / (1.0 - ratio);
  }
  std::string str() const override {
    return "geometric(" + format_number(q_) + "," + format_number(p_) + ")";
  }

 private:
  cplx q_;
  double p_;
  cplx log_;
  double modulus_;
};

class ExplicitNode final : public Sequence::Node {
 public:
  explicit ExplicitNode(std::vector<cplx> v) : v_(std::move(v)) {}
  cplx term(std::size_t k) const override {
    return (k >= 1 && k <= v_.size()) ? v_[k - 1] : cplx(0.0);
  }
  std::optional<std::size_t> length() const override { return v_.size(); }
  std::optional<Envelope> upper() const override { return Envelope{0.0, 0.0, 1.0, v_.size() + 1}; }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override {
    cplx s = 0.0;
    for (std::size_t k = std::max<std::size_t>(n, 1); k < v_.size(); ++k) s += v_[k - 1] * v_[k];
    return s;
  }
  std::string str() const override {
    std::string out = "explicit([";
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) out += ",";
      out += format_number(v_[i]);
    }
    return out + "])";
  }

 private:
  std::vector<cplx> v_;
};

class ScaleNode final : public Sequence::Node {
 public:
  ScaleNode(cplx s, Sequence x) : s_(s), x_(std::move(x)) {}
  cplx term(std::size_t k) const override { return s_ * x_.term(k); }
  cplx pair(std::size_t k) const override { return s_ * s_ * x_.pair(k); }
  std::optional<std::size_t> length() const override { return x_.length(); }
  std::optional<Envelope> upper() const override {
    auto e = x_.upper_envelope();
    if (e) e->scale *= std::abs(s_);
    return e;
  }
  std::optional<Envelope> pair_upper() const override {
    auto e = x_.node().pair_upper();
    if (e) e->scale *= std::norm(s_);
    return e;
  }
  std::optional<Envelope> lower(cplx z) const override {
    auto e = x_.lower_envelope(z / s_);
    if (e) e->scale *= std::abs(s_);
    return e;
  }
  double pair_tail_bound(std::size_t n) const override {
    return bound_mul(std::norm(s_), x_.pair_tail_bound(n));
  }
  double pair_sup_bound(std::size_t n) const override {
    return bound_mul(std::norm(s_), x_.pair_sup_bound(n));
  }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override {
    auto t = x_.pair_tail_sum(n);
    if (t) return s_ * s_ * *t;
    return std::nullopt;
  }
  std::optional<cplx> inverse_power_tail_sum(std::size_t n, int p) const override {
    auto t = x_.inverse_power_tail_sum(n, p);
    if (t) return std::pow(s_, -p) * *t;
    return std::nullopt;
  }
  double inverse_abs_power_tail_bound(std::size_t n, int p) const override {
    return std::pow(std::abs(s_), -p) * x_.inverse_abs_power_tail_bound(n, p);
  }
  double abs_lower_bound(std::size_t n) const override {
    return std::abs(s_) * x_.abs_lower_bound(n);
  }
  std::optional<cplx> constant_value() const override {
    auto c = x_.constant_value();
    if (c) return s_ * *c;
    return std::nullopt;
  }
  std::optional<cplx> constant_pair() const override {
    auto c = x_.constant_pair();
    if (c) return s_ * s_ * *c;
    return std::nullopt;
  }
  std::optional<std::pair<cplx, cplx>> linear_coefficients() const override {
    auto c = x_.linear_coefficients();
    if (c) return std::pair<cplx, cplx>{s_ * c->first, s_ * c->second};
    return std::nullopt;
  }
  std::string str() const override {
    return "scale(" + format_number(s_) + "," + x_.str() + ")";
  }

 private:
  cplx s_;
  Sequence x_;
};

class AltScaleNode final : public Sequence::Node {
 public:
  AltScaleNode(cplx s, Sequence x) : s_(s), x_(std::move(x)) {}
  cplx term(std::size_t k) const override {
    return (k % 2 == 1) ? s_ * x_.term(k) : x_.term(k) / s_;
  }
  cplx pair(std::size_t k) const override { return x_.pair(k); }
  std::optional<std::size_t> length() const override { return x_.length(); }
  std::optional<Envelope> upper() const override {
    auto e = x_.upper_envelope();
    if (e) e->scale *= std::max(std::abs(s_), 1.0 / std::abs(s_));
    return e;
  }
  std::optional<Envelope> pair_upper() const override { return x_.node().pair_upper(); }
  double pair_tail_bound(std::size_t n) const override { return x_.pair_tail_bound(n); }
  double pair_sup_bound(std::size_t n) const override { return x_.pair_sup_bound(n); }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override { return x_.pair_tail_sum(n); }
  std::optional<cplx> constant_pair() const override { return x_.constant_pair(); }
  std::string str() const override {
    return "altscale(" + format_number(s_) + "," + x_.str() + ")";
  }

 private:
  cplx s_;
  Sequence x_;
};

class OffsetNode final : public Sequence::Node {
 public:
  OffsetNode(cplx c, Sequence x) : c_(c), x_(std::move(x)) {}
  cplx term(std::size_t k) const override { return c_ + x_.term(k); }
  std::optional<Envelope> lower(cplx z) const override { return x_.lower_envelope(z - c_); }
  std::optional<Envelope> upper() const override {
    auto e = x_.upper_envelope();
    if (!e || e->ratio < 1.0 || e->power < 0.0) return std::nullopt;
    // c <= |c| k^p r^k for k >= 1 when p >= 0, r >= 1
    e->scale += std::abs(c_);
    return e;
  }
  std::optional<cplx> constant_value() const override {
    auto v = x_.constant_value();
    if (v) return c_ + *v;
    return std::nullopt;
  }
  std::string str() const override { return "offset(" + format_number(c_) + "," + x_.str() + ")"; }

 private:
  cplx c_;
  Sequence x_;
};

// x_k = num_k / (d_k - z); num defaults to 1.
class ShiftInvNode final : public Sequence::Node {
 public:
  ShiftInvNode(cplx z, std::optional<Sequence> num, Sequence diag)
      : z_(z), num_(std::move(num)), diag_(std::move(diag)) {
    auto lin = diag_.linear_coefficients();
    std::optional<cplx> c = cplx(1.0);
    if (num_) c = num_->constant_value();
    if (lin && lin->first != cplx(0.0) && c && !diag_.is_finite()) {
      a_ = lin->first;
      shift_ = ((lin->second - z_) / a_);
      numc_ = *c;
      telescopes_ = true;
    }
  }
  cplx term(std::size_t k) const override {
    if (auto len = length(); len && k > *len) return 0.0;
    cplx n = num_ ? num_->term(k) : cplx(1.0);
    return n / (diag_.term(k) - z_);
  }
  std::optional<std::size_t> length() const override {
    auto a = diag_.length();
    auto b = num_ ? num_->length() : std::nullopt;
    if (a && b) return std::min(*a, *b);
    return a ? a : b;
  }
  std::optional<Envelope> upper() const override {
    auto lo = diag_.lower_envelope(z_);
    if (!lo) return std::nullopt;
    Envelope e{1.0 / lo->scale, -lo->power, 1.0 / lo->ratio, lo->from};
    if (num_) {
      auto u = num_->upper_envelope();
      if (!u) return std::nullopt;
      e = Envelope{e.scale * u->scale, e.power + u->power, e.ratio * u->ratio,
                   std::max(e.from, u->from)};
    }
    return e;
  }
  double pair_tail_bound(std::size_t n) const override {
    if (telescopes_) {
      return telescoped_tail(*this, n, shift_.real(), std::norm(numc_) / std::norm(a_));
    }
    return Node::pair_tail_bound(n);
  }
  double pair_sup_bound(std::size_t n) const override {
    if (telescopes_) {
      return telescoped_sup(*this, n, shift_.real(), std::norm(numc_) / std::norm(a_));
    }
    return Node::pair_sup_bound(n);
  }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override {
    if (!telescopes_) return std::nullopt;
    return numc_ * numc_ / (a_ * a_ * (static_cast<double>(n) + shift_));
  }
  std::optional<cplx> constant_value() const override {
    auto d = diag_.constant_value();
    if (!d) return std::nullopt;
    cplx n = 1.0;
    if (num_) {
      auto c = num_->constant_value();
      if (!c) return std::nullopt;
      n = *c;
    }
    return n / (*d - z_);
  }
  std::string str() const override {
    std::string out = "shiftinv(" + format_number(z_) + ",";
    if (num_) out += num_->str() + ",";
    return out + diag_.str() + ")";
  }

 private:
  cplx z_;
  std::optional<Sequence> num_;
  Sequence diag_;
  bool telescopes_ = false;
  cplx a_ = 1.0, shift_ = 0.0, numc_ = 1.0;
};

class ProductNode final : public Sequence::Node {
 public:
  ProductNode(Sequence a, Sequence b) : a_(std::move(a)), b_(std::move(b)) {}
  cplx term(std::size_t k) const override { return a_.term(k) * b_.term(k); }
  cplx pair(std::size_t k) const override { return a_.pair(k) * b_.pair(k); }
  std::optional<std::size_t> length() const override {
    auto x = a_.length(), y = b_.length();
    if (x && y) return std::min(*x, *y);
    return x ? x : y;
  }
  std::optional<Envelope> upper() const override {
    auto x = a_.upper_envelope(), y = b_.upper_envelope();
    if (!x || !y) return std::nullopt;
    return Envelope{x->scale * y->scale, x->power + y->power, x->ratio * y->ratio,
                    std::max(x->from, y->from)};
  }
  std::optional<Envelope> pair_upper() const override {
    auto x = a_.node().pair_upper(), y = b_.node().pair_upper();
    if (!x || !y) return std::nullopt;
    return Envelope{x->scale * y->scale, x->power + y->power, x->ratio * y->ratio,
                    std::max(x->from, y->from)};
  }
  double pair_tail_bound(std::size_t n) const override {
    if (length()) return Node::pair_tail_bound(n);
    double best = std::min(bound_mul(a_.pair_sup_bound(n), b_.pair_tail_bound(n)),
                           bound_mul(a_.pair_tail_bound(n), b_.pair_sup_bound(n)));
    if (std::isfinite(best)) return best;
    return Node::pair_tail_bound(n);
  }
  double pair_sup_bound(std::size_t n) const override {
    if (length()) return Node::pair_sup_bound(n);
    return bound_mul(a_.pair_sup_bound(n), b_.pair_sup_bound(n));
  }
  std::optional<cplx> pair_tail_sum(std::size_t n) const override {
    if (auto c = a_.constant_pair()) {
      if (auto t = b_.pair_tail_sum(n)) return *c * *t;
    }
    if (auto c = b_.constant_pair()) {
      if (auto t = a_.pair_tail_sum(n)) return *c * *t;
    }
    return std::nullopt;
  }
  std::optional<cplx> constant_value() const override {
    auto x = a_.constant_value(), y = b_.constant_value();
    if (x && y) return *x * *y;
    return std::nullopt;
  }
  std::optional<cplx> constant_pair() const override {
    auto x = a_.constant_pair(), y = b_.constant_pair();
    if (x && y) return *x * *y;
    return std::nullopt;
  }
  std::string str() const override { return "product(" + a_.str() + "," + b_.str() + ")"; }

 private:
  Sequence a_, b_;
};

// gamma_1 = 1, gamma_{k+1} = w_k / gamma_k; only squares are exposed.
class GammaSquaredNode final : public Sequence::Node {
 public:
  explicit GammaSquaredNode(Sequence w) : w_(std::move(w)) {}
  cplx term(std::size_t k) const override {
    cplx g = 1.0;
    for (std::size_t j = 1; j < k; ++j) g = w_.term(j) / g;
    return g * g;
  }
  cplx pair(std::size_t k) const override {
    cplx w = w_.term(k);
    return w * w;
  }
  std::optional<Envelope> pair_upper() const override {
    auto e = w_.upper_envelope();
    if (!e) return std::nullopt;
    return Envelope{e->scale * e->scale, 2.0 * e->power, e->ratio * e->ratio, e->from};
  }
  std::optional<cplx> constant_pair() const override {
    auto c = w_.constant_value();
    if (c) return *c * *c;
    return std::nullopt;
  }
  std::string str() const override { return "gamma2(" + w_.str() + ")"; }

 private:
  Sequence w_;
};

}  // namespace

double envelope_tail_sum(const Envelope& env, std::size_t n) {
  const std::size_t m = std::max<std::size_t>({n, env.from, 1});
  const double C = env.scale, e = env.power, r = env.ratio;
  if (C == 0.0) return 0.0;
  if (!(r <= 1.0)) return kInf;
  const double km = static_cast<double>(m);
  if (r == 1.0) {
    if (e < -1.0) return C * (std::pow(km, e) + std::pow(km, e + 1.0) / (-e - 1.0));
    return kInf;
  }
  if (e <= 0.0) return C * std::pow(km, e) * std::pow(r, km) / (1.0 - r);
  // Ratio of consecutive terms is (1 + 1/k)^e r; wait until it drops below t.
  const double t = 0.5 * (1.0 + r);
  const double lim = std::pow(t / r, 1.0 / e) - 1.0;
  std::size_t m2 = std::max(m, static_cast<std::size_t>(std::ceil(1.0 / lim)));
  double s = 0.0;
  for (std::size_t k = m; k < m2; ++k) {
    const double kk = static_cast<double>(k);
    s += std::pow(kk, e) * std::pow(r, kk);
  }
  const double k2 = static_cast<double>(m2);
  s += std::pow(k2, e) * std::pow(r, k2) / (1.0 - t);
  return C * s;
}

double envelope_sup(const Envelope& env, std::size_t n) {
  const std::size_t m = std::max<std::size_t>({n, env.from, 1});
  const double C = env.scale, e = env.power, r = env.ratio;
  if (C == 0.0) return 0.0;
  if (r > 1.0 || (r == 1.0 && e > 0.0) || std::isnan(r)) return kInf;
  const double km = static_cast<double>(m);
  if (r == 1.0 || e <= 0.0) return envelope_at(env, km);
  double kstar = e / -std::log(r);
  return envelope_at(env, std::max(km, kstar));
}

// ---- Node defaults ---------------------------------------------------------

std::optional<Envelope> Sequence::Node::pair_upper() const {
  auto u = upper();
  if (!u) return std::nullopt;
  double grow = u->power > 0.0 ? std::pow(2.0, u->power) : 1.0;
  return Envelope{u->scale * u->scale * u->ratio * grow, 2.0 * u->power, u->ratio * u->ratio,
                  u->from};
}

double Sequence::Node::pair_tail_bound(std::size_t n) const {
  n = std::max<std::size_t>(n, 1);
  if (auto len = length()) {
    return head_fold(n, *len, [&](std::size_t k) { return std::abs(pair(k)); }, false);
  }
  auto env = pair_upper();
  if (!env) return kInf;
  double head = head_fold(n, env->from, [&](std::size_t k) { return std::abs(pair(k)); }, false);
  return head + envelope_tail_sum(*env, n);
}

double Sequence::Node::pair_sup_bound(std::size_t n) const {
  n = std::max<std::size_t>(n, 1);
  if (auto len = length()) {
    return head_fold(n, *len, [&](std::size_t k) { return std::abs(pair(k)); }, true);
  }
  auto env = pair_upper();
  if (!env) return kInf;
  double head = head_fold(n, env->from, [&](std::size_t k) { return std::abs(pair(k)); }, true);
  return std::max(head, envelope_sup(*env, n));
}

double Sequence::Node::inverse_abs_power_tail_bound(std::size_t n, int p) const {
  n = std::max<std::size_t>(n, 1);
  if (length()) return kInf;
  auto env = lower(0.0);
  if (!env) return kInf;
  double head = 0.0;
  for (std::size_t k = n; k < env->from; ++k) {
    double a = std::abs(term(k));
    if (a == 0.0) return kInf;
    head += std::pow(a, -p);
  }
  Envelope inv{std::pow(env->scale, -p), -p * env->power, std::pow(env->ratio, -p), env->from};
  return head + envelope_tail_sum(inv, n);
}

double Sequence::Node::abs_lower_bound(std::size_t n) const {
  n = std::max<std::size_t>(n, 1);
  if (length()) return 0.0;
  auto env = lower(0.0);
  if (!env) return 0.0;
  double m = kInf;
  for (std::size_t k = n; k < env->from; ++k) m = std::min(m, std::abs(term(k)));
  return std::min(m, envelope_inf(*env, std::max(n, env->from)));
}

std::optional<cplx> Sequence::Node::constant_pair() const {
  auto c = constant_value();
  if (c) return *c * *c;
  return std::nullopt;
}

// ---- Sequence --------------------------------------------------------------

Sequence::Sequence() : node_(std::make_shared<ConstantNode>(0.0)) {}
Sequence::Sequence(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  if (!node_) throw DomainViolation("null sequence node");
}

Sequence Sequence::constant(cplx c) { return Sequence(std::make_shared<ConstantNode>(c)); }

Sequence Sequence::linear(cplx a, cplx b) {
  if (a == cplx(0.0)) return constant(b);
  return Sequence(std::make_shared<LinearNode>(a, b));
}

Sequence Sequence::reciprocal(cplx nu) { return Sequence(std::make_shared<ReciprocalNode>(nu)); }

Sequence Sequence::geometric(cplx q, double p) {
  if (q == cplx(0.0)) throw DomainViolation("geometric: q must be non-zero");
  if (!std::isfinite(p)) throw DomainViolation("geometric: p must be finite");
  return Sequence(std::make_shared<GeometricNode>(q, p));
}

Sequence Sequence::explicit_list(std::vector<cplx> values) {
  return Sequence(std::make_shared<ExplicitNode>(std::move(values)));
}

Sequence Sequence::scaled(cplx s, const Sequence& inner) {
  if (s == cplx(0.0)) return Sequence();
  return Sequence(std::make_shared<ScaleNode>(s, inner));
}

Sequence Sequence::alternating_scale(cplx s, const Sequence& inner) {
  if (s == cplx(0.0)) throw DomainViolation("altscale: s must be non-zero");
  return Sequence(std::make_shared<AltScaleNode>(s, inner));
}

Sequence Sequence::shifted_inverse(cplx z, const Sequence& diag) {
  return Sequence(std::make_shared<ShiftInvNode>(z, std::nullopt, diag));
}

Sequence Sequence::shifted_inverse(cplx z, const Sequence& num, const Sequence& diag) {
  return Sequence(std::make_shared<ShiftInvNode>(z, num, diag));
}

Sequence Sequence::offset(cplx c, const Sequence& inner) {
  if (c == cplx(0.0)) return inner;
  if (auto lin = inner.linear_coefficients(); lin && !inner.is_finite()) {
    return linear(lin->first, lin->second + c);
  }
  if (inner.is_finite()) throw DomainViolation("offset of a finite sequence is not finite");
  return Sequence(std::make_shared<OffsetNode>(c, inner));
}

Sequence Sequence::product(const Sequence& a, const Sequence& b) {
  return Sequence(std::make_shared<ProductNode>(a, b));
}

Sequence Sequence::gamma_squared(const Sequence& w) {
  return Sequence(std::make_shared<GammaSquaredNode>(w));
}

cplx Sequence::term(std::size_t k) const {
  if (k == 0) throw DomainViolation("sequence index is 1-based");
  return node_->term(k);
}

cplx Sequence::pair(std::size_t k) const {
  if (k == 0) throw DomainViolation("sequence index is 1-based");
  return node_->pair(k);
}

std::vector<cplx> Sequence::head(std::size_t n) const {
  std::vector<cplx> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(node_->term(k));
  return out;
}

std::optional<std::size_t> Sequence::length() const { return node_->length(); }
double Sequence::pair_tail_bound(std::size_t n) const {
  return node_->pair_tail_bound(std::max<std::size_t>(n, 1));
}
double Sequence::pair_sup_bound(std::size_t n) const {
  return node_->pair_sup_bound(std::max<std::size_t>(n, 1));
}
std::optional<cplx> Sequence::pair_tail_sum(std::size_t n) const {
  return node_->pair_tail_sum(std::max<std::size_t>(n, 1));
}
std::optional<cplx> Sequence::inverse_power_tail_sum(std::size_t n, int p) const {
  return node_->inverse_power_tail_sum(std::max<std::size_t>(n, 1), p);
}
double Sequence::inverse_abs_power_tail_bound(std::size_t n, int p) const {
  return node_->inverse_abs_power_tail_bound(std::max<std::size_t>(n, 1), p);
}
double Sequence::abs_lower_bound(std::size_t n) const {
  return node_->abs_lower_bound(std::max<std::size_t>(n, 1));
}
std::optional<Envelope> Sequence::upper_envelope() const { return node_->upper(); }
std::optional<Envelope> Sequence::lower_envelope(cplx z) const { return node_->lower(z); }
std::optional<cplx> Sequence::constant_value() const { return node_->constant_value(); }
std::optional<cplx> Sequence::constant_pair() const { return node_->constant_pair(); }
std::optional<std::pair<cplx, cplx>> Sequence::linear_coefficients() const {
  return node_->linear_coefficients();
}
std::string Sequence::str() const { return node_->str(); }

}  // namespace charfact
