#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "charfact/error.hpp"
#include "charfact/sequence.hpp"

namespace charfact {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad number '" + std::string(whole) + "'");
  }
  return v;
}

double parse_imag_coefficient(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

// Splits on top-level commas, respecting () and [] nesting.
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') {
      if (--depth < 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
    } else if (c == ',' && depth == 0) {
      out.emplace_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
  auto last = trim(s.substr(start));
  if (!last.empty() || !out.empty()) out.emplace_back(last);
  return out;
}

void expect_args(const SpecCall& call, std::size_t lo, std::size_t hi) {
  if (call.args.size() < lo || call.args.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
    throw ParseError(call.name + " expects " + want + " argument(s), got " +
                     std::to_string(call.args.size()));
  }
}

double parse_real_arg(const std::string& s) {
  cplx v = parse_number(s);
  if (v.imag() != 0.0) throw ParseError("expected a real number, got '" + s + "'");
  return v.real();
}

}  // namespace

SpecCall parse_spec_call(std::string_view text) {
  auto s = trim(text);
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  if (i == 0) throw ParseError("expected a name in '" + std::string(s) + "'");
  SpecCall call;
  call.name = std::string(s.substr(0, i));
  auto rest = trim(s.substr(i));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
    throw ParseError("expected '" + call.name + "(...)' in '" + std::string(s) + "'");
  }
  call.args = split_top_level(rest.substr(1, rest.size() - 2));
  return call;
}

cplx parse_number(std::string_view text) {
  std::string buf;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) buf.push_back(c);
  }
  std::string_view s = buf;
  if (s.empty()) throw ParseError("empty number");
  if (s.back() == 'i' || s.back() == 'j') {
    auto body = s.substr(0, s.size() - 1);
    std::size_t pos = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        pos = i;
        break;
      }
    }
    if (pos == std::string_view::npos) return {0.0, parse_imag_coefficient(body, text)};
    return {parse_real(body.substr(0, pos), text), parse_imag_coefficient(body.substr(pos), text)};
  }
  return {parse_real(s, text), 0.0};
}

std::string format_number(cplx value) {
  auto fmt = [](double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  };
  if (value.imag() == 0.0) return fmt(value.real());
  std::string im = fmt(value.imag()) + "i";
  if (value.real() == 0.0) return im;
  return fmt(value.real()) + (value.imag() < 0.0 ? "" : "+") + im;
}

Sequence parse_sequence(std::string_view text) {
  const SpecCall call = parse_spec_call(text);
  const auto& a = call.args;
  const std::string& name = call.name;
  if (name == "constant") {
    expect_args(call, 1, 1);
    return Sequence::constant(parse_number(a[0]));
  }
  if (name == "linear") {
    expect_args(call, 2, 2);
    return Sequence::linear(parse_number(a[0]), parse_number(a[1]));
  }
  if (name == "reciprocal") {
    expect_args(call, 1, 1);
    return Sequence::reciprocal(parse_number(a[0]));
  }
  if (name == "geometric") {
    expect_args(call, 2, 2);
    try {
      return Sequence::geometric(parse_number(a[0]), parse_real_arg(a[1]));
    } catch (const DomainViolation& e) {
      throw ParseError(e.what());
    }
  }
  if (name == "explicit") {
    std::vector<std::string> items = a;
    if (a.size() == 1 && !a[0].empty() && a[0].front() == '[') {
      if (a[0].back() != ']') throw ParseError("explicit list must end with ']'");
      items = split_top_level(std::string_view(a[0]).substr(1, a[0].size() - 2));
    }
    std::vector<cplx> values;
    values.reserve(items.size());
    for (const auto& item : items) values.push_back(parse_number(item));
    return Sequence::explicit_list(std::move(values));
  }
  if (name == "scale") {
    expect_args(call, 2, 2);
    return Sequence::scaled(parse_number(a[0]), parse_sequence(a[1]));
  }
  if (name == "altscale") {
    expect_args(call, 2, 2);
    cplx s = parse_number(a[0]);
    if (s == cplx(0.0)) throw ParseError("altscale needs a non-zero factor");
    return Sequence::alternating_scale(s, parse_sequence(a[1]));
  }
  if (name == "shiftinv") {
    expect_args(call, 2, 3);
    if (a.size() == 2) return Sequence::shifted_inverse(parse_number(a[0]), parse_sequence(a[1]));
    return Sequence::shifted_inverse(parse_number(a[0]), parse_sequence(a[1]),
                                     parse_sequence(a[2]));
  }
  if (name == "product") {
    expect_args(call, 2, 2);
    return Sequence::product(parse_sequence(a[0]), parse_sequence(a[1]));
  }
  if (name == "offset") {
    expect_args(call, 2, 2);
    try {
      return Sequence::offset(parse_number(a[0]), parse_sequence(a[1]));
    } catch (const DomainViolation& e) {
      throw ParseError(e.what());
    }
  }
  if (name == "gamma2") {
    expect_args(call, 1, 1);
    return Sequence::gamma_squared(parse_sequence(a[0]));
  }
  throw ParseError("unknown sequence family '" + name + "'");
}

}  // namespace charfact
