#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace charfact::combinat {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

/// A composition m = (m_1, ..., m_l) with every part >= 1.
class Multiindex {
 public:
  explicit Multiindex(std::vector<unsigned> parts);
  Multiindex(std::initializer_list<unsigned> parts)
      : Multiindex(std::vector<unsigned>(parts)) {}

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned operator[](std::size_t j) const { return parts_[j]; }
  /// |m|
  unsigned order() const { return order_; }
  /// d(m)
  std::size_t length() const { return parts_.size(); }
  std::string str() const;

  friend bool operator==(const Multiindex&, const Multiindex&) = default;
  friend auto operator<=>(const Multiindex& a, const Multiindex& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<unsigned> parts_;
  unsigned order_ = 0;
};

struct Limits {
  /// cap on 2^{N-1}
  std::size_t max_compositions = std::size_t{1} << 24;
  /// cap on |m| for path enumeration
  unsigned max_path_order = 10;
};

/// All compositions of N: the compositions of N-1 with a 1 prepended,
/// followed by those with their first part incremented (recursively).
std::vector<Multiindex> compositions(unsigned N, const Limits& limits = {});

BigInt binomial(unsigned n, unsigned k);
BigInt catalan(unsigned n);
BigInt central_binomial(unsigned n);
/// |m|! / Π m_j!
BigInt multinomial(const Multiindex& m);

/// Π_j binom(m_j + m_{j+1} - 1, m_{j+1})
BigInt beta(const Multiindex& m);
/// β(m) / m_1
ExactRational alpha(const Multiindex& m);
/// Σ_j (j-1) m_j
unsigned long long epsilon1(const Multiindex& m);

ExactRational sum_alpha(unsigned N, const Limits& limits = {});
BigInt sum_beta(unsigned N, const Limits& limits = {});

/// Loops on the path graph 1 - 2 - ... - (l+1) based at vertex 1 that cross
/// edge (j, j+1) exactly 2 m_j times, counted by exhaustive walk.
BigInt count_dyck_paths(const Multiindex& m, const Limits& limits = {});
/// Same, summed over every base vertex.
BigInt count_loops(const Multiindex& m, const Limits& limits = {});

/// "p/q", always with an explicit denominator.
std::string to_string(const ExactRational& r);
double to_double(const ExactRational& r);

}  // namespace charfact::combinat
