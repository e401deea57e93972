#include "charfact/combinat.hpp"

#include <cstdint>
#include <string>

#include "charfact/error.hpp"

namespace charfact::combinat {

Multiindex::Multiindex(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainViolation("a multiindex needs at least one part");
  for (unsigned p : parts_) {
    if (p == 0) throw DomainViolation("multiindex parts must be >= 1");
    order_ += p;
  }
}

std::string Multiindex::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

std::vector<Multiindex> compositions(unsigned N, const Limits& limits) {
  if (N == 0) throw DomainViolation("compositions: N must be >= 1");
  if (N - 1 >= 63 || (std::size_t{1} << (N - 1)) > limits.max_compositions) {
    throw ResourceLimit("2^" + std::to_string(N - 1) + " compositions exceed the cap of " +
                        std::to_string(limits.max_compositions));
  }
  std::vector<std::vector<unsigned>> level{{1}};
  for (unsigned n = 2; n <= N; ++n) {
    std::vector<std::vector<unsigned>> next;
    next.reserve(level.size() * 2);
    for (const auto& m : level) {
      std::vector<unsigned> p;
      p.reserve(m.size() + 1);
      p.push_back(1);
      p.insert(p.end(), m.begin(), m.end());
      next.push_back(std::move(p));
    }
    for (const auto& m : level) {
      auto p = m;
      ++p.front();
      next.push_back(std::move(p));
    }
    level = std::move(next);
  }
  std::vector<Multiindex> out;
  out.reserve(level.size());
  for (auto& m : level) out.emplace_back(std::move(m));
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt central_binomial(unsigned n) { return binomial(2 * n, n); }

BigInt catalan(unsigned n) { return central_binomial(n) / (n + 1); }

BigInt multinomial(const Multiindex& m) {
  BigInt r = 1;
  unsigned used = 0;
  for (unsigned p : m.parts()) {
    used += p;
    r *= binomial(used, p);
  }
  return r;
}

BigInt beta(const Multiindex& m) {
  BigInt r = 1;
  for (std::size_t j = 0; j + 1 < m.length(); ++j) r *= binomial(m[j] + m[j + 1] - 1, m[j + 1]);
  return r;
}

ExactRational alpha(const Multiindex& m) { return ExactRational(beta(m), BigInt(m[0])); }

unsigned long long epsilon1(const Multiindex& m) {
  unsigned long long e = 0;
  for (std::size_t j = 0; j < m.length(); ++j) e += j * m[j];
  return e;
}

ExactRational sum_alpha(unsigned N, const Limits& limits) {
  ExactRational s = 0;
  for (const auto& m : compositions(N, limits)) s += alpha(m);
  return s;
}

BigInt sum_beta(unsigned N, const Limits& limits) {
  BigInt s = 0;
  for (const auto& m : compositions(N, limits)) s += beta(m);
  return s;
}

namespace {

// Walks on vertices 0..l crossing edge j (between j and j+1) exactly
// budget[j] times and ending at `base`.
class LoopCounter {
 public:
  LoopCounter(const Multiindex& m, std::size_t base) : base_(base) {
    for (unsigned p : m.parts()) budget_.push_back(2 * p);
    for (int b : budget_) left_ += b;
  }

  std::uint64_t run() { return walk(base_); }

 private:
  bool feasible(std::size_t v) const {
    // Every edge that still has budget, and the way back to the base, must be
    // reachable through edges that still have budget.
    std::size_t lo = std::min(v, base_), hi = std::max(v, base_);
    for (std::size_t j = 0; j < budget_.size(); ++j) {
      if (budget_[j] > 0) {
        lo = std::min(lo, j);
        hi = std::max(hi, j + 1);
      }
    }
    for (std::size_t j = lo; j < hi; ++j) {
      if (budget_[j] == 0) return false;
    }
    return true;
  }

  std::uint64_t walk(std::size_t v) {
    if (left_ == 0) return v == base_ ? 1 : 0;
    if (!feasible(v)) return 0;
    std::uint64_t count = 0;
    if (v < budget_.size() && budget_[v] > 0) {
      --budget_[v];
      --left_;
      count += walk(v + 1);
      ++budget_[v];
      ++left_;
    }
    if (v > 0 && budget_[v - 1] > 0) {
      --budget_[v - 1];
      --left_;
      count += walk(v - 1);
      ++budget_[v - 1];
      ++left_;
    }
    return count;
  }

  std::size_t base_;
  std::vector<int> budget_;
  int left_ = 0;
};

void check_path_cap(const Multiindex& m, const Limits& limits) {
  if (m.order() > limits.max_path_order) {
    throw ResourceLimit("path enumeration capped at |m| <= " +
                        std::to_string(limits.max_path_order) + ", got " +
                        std::to_string(m.order()));
  }
}

}  // namespace

BigInt count_dyck_paths(const Multiindex& m, const Limits& limits) {
  check_path_cap(m, limits);
  return BigInt(LoopCounter(m, 0).run());
}

BigInt count_loops(const Multiindex& m, const Limits& limits) {
  check_path_cap(m, limits);
  BigInt total = 0;
  for (std::size_t base = 0; base <= m.length(); ++base) total += LoopCounter(m, base).run();
  return total;
}

std::string to_string(const ExactRational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double to_double(const ExactRational& r) { return r.convert_to<double>(); }

}  // namespace charfact::combinat
