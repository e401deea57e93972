#include "charfact/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/version.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include "charfact/combinat.hpp"
#include "charfact/coupling.hpp"
#include "charfact/error.hpp"
#include "charfact/fcal.hpp"
#include "charfact/jacobi.hpp"
#include "charfact/oracle.hpp"
#include "charfact/sequence.hpp"

namespace charfact::cli {

namespace {

using nlohmann::json;
using combinat::ExactRational;

// A malformed flag value: exit code 2, message names the flag.
struct FlagError : std::runtime_error {
  FlagError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

json cjson(cplx v) { return json::array({v.real(), v.imag()}); }

Sequence seq_flag(const std::string& flag, const std::string& text) {
  if (text.empty()) throw FlagError(flag, "required");
  try {
    return parse_sequence(text);
  } catch (const Error& e) {
    throw FlagError(flag, e.what());
  }
}

std::pair<double, double> pair_flag(const std::string& flag, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw FlagError(flag, "expected 'a,b', got '" + text + "'");
  try {
    cplx a = parse_number(text.substr(0, comma)), b = parse_number(text.substr(comma + 1));
    if (a.imag() != 0.0 || b.imag() != 0.0) throw FlagError(flag, "expected real numbers");
    return {a.real(), b.real()};
  } catch (const ParseError& e) {
    throw FlagError(flag, e.what());
  }
}

cplx complex_flag(const std::string& flag, const std::string& text) {
  try {
    if (text.find(',') != std::string::npos) {
      auto [re, im] = pair_flag(flag, text);
      return {re, im};
    }
    return parse_number(text);
  } catch (const ParseError& e) {
    throw FlagError(flag, e.what());
  }
}

std::vector<double> list_flag(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      cplx v = parse_number(item);
      if (v.imag() != 0.0) throw FlagError(flag, "expected real numbers");
      out.push_back(v.real());
    } catch (const ParseError& e) {
      throw FlagError(flag, e.what());
    }
  }
  if (out.empty()) throw FlagError(flag, "empty list");
  return out;
}

combinat::Multiindex multiindex_flag(const std::string& flag, const std::string& text) {
  std::vector<unsigned> parts;
  for (double v : list_flag(flag, text)) {
    if (v < 1.0 || v != std::floor(v)) throw FlagError(flag, "parts must be positive integers");
    parts.push_back(static_cast<unsigned>(v));
  }
  return combinat::Multiindex(std::move(parts));
}

// "p/q" or a decimal literal, converted exactly.
ExactRational rational_flag(const std::string& flag, const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      return ExactRational(combinat::BigInt(text.substr(0, slash)),
                           combinat::BigInt(text.substr(slash + 1)));
    }
    std::string digits;
    long scale = 0;
    bool dot = false;
    for (char c : text) {
      if (c == '.') {
        if (dot) throw FlagError(flag, "bad number '" + text + "'");
        dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && digits.empty())) {
        digits.push_back(c);
        if (dot) ++scale;
      } else {
        throw FlagError(flag, "bad number '" + text + "'");
      }
    }
    if (digits.empty() || digits == "-") throw FlagError(flag, "bad number '" + text + "'");
    combinat::BigInt den = 1;
    for (long i = 0; i < scale; ++i) den *= 10;
    return ExactRational(combinat::BigInt(digits), den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const FlagError*>(&e)) throw;
    throw FlagError(flag, "bad number '" + text + "'");
  }
}

json zero_set_json(const ZeroSet& z) {
  json roots = json::array();
  for (std::size_t i = 0; i < z.size(); ++i) {
    roots.push_back({{"value", z.roots[i]}, {"enclosure", z.enclosures[i]}});
  }
  return roots;
}

void print_pretty(std::ostream& out, const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      print_pretty(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    }
    return;
  }
  if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) print_pretty(out, j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  out << std::left << std::setw(28) << prefix << ' ' << j.dump() << '\n';
}

struct Context {
  double tol = 1e-10;
  bool pretty = false;
  bool use_oracle = false;
  bool timing = false;
  json inputs = json::object();
  TruncationPolicy policy = TruncationPolicy::from_environment();
};

struct Output {
  json result;
  std::optional<double> error_bound;
  json extra = json::object();  // merged into the manifest
};

JacobiSpec jacobi_from_flags(Context& ctx, const std::string& jac, const std::string& lam,
                             const std::string& w) {
  Sequence l, ww;
  if (!jac.empty()) {
    SpecCall call;
    try {
      call = parse_spec_call(jac);
    } catch (const ParseError& e) {
      throw FlagError("--jacobi", e.what());
    }
    if (call.name != "jacobi" || call.args.size() != 2) {
      throw FlagError("--jacobi", "expected jacobi(lambda_spec, w_spec)");
    }
    l = seq_flag("--jacobi", call.args[0]);
    ww = seq_flag("--jacobi", call.args[1]);
  } else {
    l = seq_flag("--lambda", lam);
    ww = seq_flag("--w", w);
  }
  ctx.inputs["lambda"] = l.str();
  ctx.inputs["w"] = ww.str();
  return JacobiSpec::certified(l, ww);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  CLI::App app{"Characteristic functions of Jacobi operators", "charfact"};
  app.require_subcommand(1);
  app.add_option("--tol", ctx.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--pretty", ctx.pretty, "human-readable table instead of JSON");
  app.add_flag("--oracle", ctx.use_oracle, "add brute-force reference values");
  app.add_flag("--timing", ctx.timing, "record wall time in the manifest");
  app.set_version_flag("--version", kVersion);

  std::string x_text, lam_text, w_text, jac_text, z_text, window_text, q_text, m_text, radii_text;
  std::string kind = "F", what;
  unsigned n = 1, count = 10, order = 12;
  std::size_t truncation = 100000, tnum = 0;
  double nu = 0.0, cutoff = 50.0, zr = 0.0;
  bool exact = false;
  std::function<Output()> action;
  std::string name;

  auto common = [&](CLI::App* s) {
    s->fallthrough();
    return s;
  };
  auto jac_opts = [&](CLI::App* s) {
    s->add_option("--jacobi", jac_text, "jacobi(lambda_spec, w_spec)");
    s->add_option("--lambda", lam_text, "diagonal sequence spec");
    s->add_option("--w", w_text, "off-diagonal sequence spec");
  };

  // f
  auto* f = common(app.add_subcommand("f", "evaluate F(x)"));
  f->add_option("--x", x_text, "sequence spec")->required();
  f->callback([&] {
    name = "f";
    action = [&]() -> Output {
      Sequence x = seq_flag("--x", x_text);
      ctx.inputs["x"] = x.str();
      EvalResult r = f_infinite(x, ctx.tol, ctx.policy);
      Output o{cjson(r.value), r.error_bound, {{"terms_used", r.terms_used}}};
      if (ctx.use_oracle) {
        if (auto len = x.length(); len && *len <= 20) {
          o.extra["oracle_multisum"] = cjson(oracle::f_multisum(x.head(*len)));
        }
      }
      return o;
    };
  });

  // logf
  auto* lf = common(app.add_subcommand("logf", "log F(x), or its series with --N"));
  lf->add_option("--x", x_text, "sequence spec")->required();
  auto* lfN = lf->add_option("--N,--n", n, "series order")->check(CLI::PositiveNumber);
  lf->callback([&, lfN] {
    name = "logf";
    action = [&, lfN]() -> Output {
      Sequence x = seq_flag("--x", x_text);
      ctx.inputs["x"] = x.str();
      if (lfN->count() > 0) {
        SeriesResult s = log_f_series(x, static_cast<int>(n), std::min(ctx.tol, 1e-15), ctx.policy);
        json partial = json::array();
        for (const cplx& v : s.partial_sums) partial.push_back(cjson(v));
        return {cjson(s.value), s.tail_bound,
                {{"order", n}, {"pair_sum_bound", s.pair_sum}, {"terms_used", s.terms_used},
                 {"partial_sums", partial}}};
      }
      EvalResult r = log_f(x, ctx.tol, ctx.policy);
      return {cjson(r.value), r.error_bound, {{"terms_used", r.terms_used}}};
    };
  });

  // combinat
  auto* cb = common(app.add_subcommand("combinat", "exact combinatorics"));
  cb->add_option("what", what,
                 "sum-alpha | sum-beta | catalan | central-binomial | compositions | alpha | beta | "
                 "epsilon1 | dyck | loops")
      ->required();
  cb->add_option("--n,--N", n, "order")->check(CLI::PositiveNumber);
  cb->add_option("--m", m_text, "multiindex, e.g. 2,3,1");
  cb->callback([&] {
    name = "combinat";
    action = [&]() -> Output {
      using namespace combinat;
      ctx.inputs["what"] = what;
      auto need_m = [&] {
        if (m_text.empty()) throw FlagError("--m", "required for '" + what + "'");
        auto m = multiindex_flag("--m", m_text);
        ctx.inputs["m"] = m.str();
        return m;
      };
      auto parts = [](const Multiindex& m) { return json(m.parts()); };
      ctx.inputs["n"] = n;
      if (what == "sum-alpha") return {to_string(sum_alpha(n)), std::nullopt, {}};
      if (what == "sum-beta") return {sum_beta(n).str(), std::nullopt, {}};
      if (what == "catalan") return {catalan(n).str(), std::nullopt, {}};
      if (what == "central-binomial") return {central_binomial(n).str(), std::nullopt, {}};
      if (what == "compositions") {
        json a = json::array();
        for (const auto& m : compositions(n)) a.push_back(parts(m));
        return {a, std::nullopt, {}};
      }
      if (what == "alpha" || what == "beta" || what == "epsilon1") {
        auto one = [&](const Multiindex& m) -> json {
          if (what == "alpha") return to_string(alpha(m));
          if (what == "beta") return beta(m).str();
          return epsilon1(m);
        };
        if (!m_text.empty()) return {one(need_m()), std::nullopt, {}};
        json a = json::array();
        for (const auto& m : compositions(n)) a.push_back({{"m", parts(m)}, {what, one(m)}});
        return {a, std::nullopt, {}};
      }
      if (what == "dyck") return {count_dyck_paths(need_m()).str(), std::nullopt, {}};
      if (what == "loops") return {count_loops(need_m()).str(), std::nullopt, {}};
      throw FlagError("what", "unknown combinat quantity '" + what + "'");
    };
  });

  // charfn
  auto* cf = common(app.add_subcommand("charfn", "characteristic function of a Jacobi matrix"));
  cf->require_subcommand(1);
  auto* cfe = common(cf->add_subcommand("eval", "F_J(z), H_J(z) or Phi_lambda(z)"));
  jac_opts(cfe);
  cfe->add_option("--z", z_text, "point, 're,im' or a complex literal")->required();
  cfe->add_option("--kind", kind, "F | H | phi")->check(CLI::IsMember({"F", "H", "phi"}));
  cfe->callback([&] {
    name = "charfn eval";
    action = [&]() -> Output {
      JacobiSpec J = jacobi_from_flags(ctx, jac_text, lam_text, w_text);
      const cplx z = complex_flag("--z", z_text);
      ctx.inputs["z"] = cjson(z);
      ctx.inputs["kind"] = kind;
      EvalResult r;
      if (kind == "F") r = char_function(J, z, ctx.tol, {ctx.policy});
      else if (kind == "H") r = regularized_char(J, z, ctx.tol, ctx.policy);
      else r = phi_lambda(J.lambda(), z, ctx.tol, ctx.policy);
      json res = {{"value", cjson(r.value)}, {"error_bound", r.error_bound}, {"terms_used", r.terms_used}};
      return {res, r.error_bound, {{"terms_used", r.terms_used}}};
    };
  });

  auto* cfz = common(cf->add_subcommand("zeros", "eigenvalues in a window"));
  jac_opts(cfz);
  cfz->add_option("--window", window_text, "a,b")->required();
  cfz->add_option("--truncation", tnum, "oracle truncation size (with --oracle)");
  cfz->callback([&] {
    name = "charfn zeros";
    action = [&]() -> Output {
      JacobiSpec J = jacobi_from_flags(ctx, jac_text, lam_text, w_text);
      auto [lo, hi] = pair_flag("--window", window_text);
      if (!(lo < hi)) throw FlagError("--window", "need a < b");
      ctx.inputs["window"] = {lo, hi};
      RootOptions ro;
      ro.policy = ctx.policy;
      ZeroSet zs = find_eigenvalues(J, lo, hi, ctx.tol, ro);
      json res = {{"roots", zero_set_json(zs)}, {"count", zs.size()}};
      Output o{res, std::nullopt, {}};
      if (ctx.use_oracle) {
        const std::size_t N = tnum ? tnum : 2000;
        json ref = json::array();
        for (double e : oracle::tridiag_eigen(J.truncation(N))) {
          if (e >= lo && e <= hi) ref.push_back(e);
        }
        o.result["oracle_roots"] = ref;
        o.extra["oracle_truncation"] = N;
      }
      return o;
    };
  });

  auto* cfh = common(cf->add_subcommand("hadamard", "Hadamard factorization from the zeros"));
  jac_opts(cfh);
  cfh->add_option("--cutoff", cutoff, "use all eigenvalues below this value");
  cfh->add_option("--z", z_text, "evaluate the product at this point");
  cfh->callback([&] {
    name = "charfn hadamard";
    action = [&]() -> Output {
      JacobiSpec J = jacobi_from_flags(ctx, jac_text, lam_text, w_text);
      ctx.inputs["cutoff"] = cutoff;
      RootOptions ro;
      ro.policy = ctx.policy;
      ZeroSet zs = eigenvalues_below(J, cutoff, ctx.tol, ro);
      HadamardB hb = hadamard_b(J, zs, ctx.tol);
      json res = {{"b", hb.b},
                  {"tail_estimate", hb.tail_estimate},
                  {"zeros_used", hb.zeros_used},
                  {"H0", cjson(hb.f0)}};
      Output o{res, hb.tail_estimate, {}};
      if (!z_text.empty()) {
        const cplx z = complex_flag("--z", z_text);
        ctx.inputs["z"] = cjson(z);
        HadamardValue hv = hadamard_eval(z, hb.f0, hb.b, zs, cutoff, &J.lambda());
        EvalResult direct = regularized_char(J, z, ctx.tol, ctx.policy);
        o.result["value"] = cjson(hv.value);
        o.result["value_tail_bound"] = hv.tail_bound;
        o.result["direct"] = cjson(direct.value);
        o.result["direct_error_bound"] = direct.error_bound;
      }
      return o;
    };
  });

  auto* cfd = common(cf->add_subcommand("det2", "regularized determinant series"));
  jac_opts(cfd);
  cfd->add_option("--order,--M", order, "series order M")->check(CLI::Range(2, 40));
  cfd->add_option("--truncation", truncation, "matrix size N")->check(CLI::Range(2, 100000000));
  cfd->add_option("--z", z_text, "point")->required();
  cfd->callback([&] {
    name = "charfn det2";
    action = [&]() -> Output {
      JacobiSpec J = jacobi_from_flags(ctx, jac_text, lam_text, w_text);
      const cplx z = complex_flag("--z", z_text);
      ctx.inputs["z"] = cjson(z);
      ctx.inputs["order"] = order;
      Det2Result d = det2_series(J, z, static_cast<int>(order), truncation);
      json partial = json::array();
      for (const cplx& v : d.partial_sums) partial.push_back(cjson(v));
      json res = {{"value", cjson(d.value)}, {"partial_sums", partial}};
      Output o{res, std::nullopt, {{"truncation", d.truncation}}};
      if (ctx.use_oracle) o.result["regularized"] = cjson(regularized_char(J, z, ctx.tol, ctx.policy).value);
      return o;
    };
  });

  auto* cfg = common(cf->add_subcommand("growth", "max |H_J| on circles"));
  jac_opts(cfg);
  cfg->add_option("--radii", radii_text, "r1,r2,...")->required();
  cfg->callback([&] {
    name = "charfn growth";
    action = [&]() -> Output {
      JacobiSpec J = jacobi_from_flags(ctx, jac_text, lam_text, w_text);
      auto radii = list_flag("--radii", radii_text);
      ctx.inputs["radii"] = radii;
      json a = json::array();
      for (const auto& g : growth_scan(J, radii)) {
        a.push_back({{"radius", g.radius}, {"max_abs", g.max_abs}, {"log_max_over_r2", g.log_max_over_r2}});
      }
      return {a, std::nullopt, {}};
    };
  });

  // coupling
  auto* cp = common(app.add_subcommand("coupling", "coupling-constant factorization f(w) = F(w x)"));
  cp->require_subcommand(1);
  auto* cpz = common(cp->add_subcommand("zeros", "smallest positive zeros of f"));
  cpz->add_option("--x", x_text, "sequence spec")->required();
  cpz->add_option("--count", count, "number of zeros");
  cpz->callback([&] {
    name = "coupling zeros";
    action = [&]() -> Output {
      Sequence x = seq_flag("--x", x_text);
      ctx.inputs["x"] = x.str();
      ctx.inputs["count"] = count;
      CouplingProblem P = CouplingProblem::make(x);
      CouplingZeros z = coupling_zeros(P, count, ctx.tol, ctx.policy);
      json a = json::array();
      for (std::size_t i = 0; i < z.zeta.size(); ++i) {
        a.push_back({{"value", z.zeta[i]}, {"enclosure", z.enclosures[i]}, {"certified", bool(z.certified[i])}});
      }
      json res = {{"zeros", a}};
      if (!z.zeta.empty()) {
        PowerSum t = trace_tail(P, z);
        res["trace_tail"] = t.value.real();
        res["trace_tail_error"] = t.tail_bound;
      }
      return {res, std::nullopt, {{"truncation", z.truncation}}};
    };
  });

  auto* cpv = common(cp->add_subcommand("eval", "f(w)"));
  cpv->add_option("--x", x_text, "sequence spec")->required();
  cpv->add_option("--w", z_text, "coupling constant")->required();
  cpv->callback([&] {
    name = "coupling eval";
    action = [&]() -> Output {
      Sequence x = seq_flag("--x", x_text);
      const cplx w = complex_flag("--w", z_text);
      ctx.inputs["x"] = x.str();
      ctx.inputs["w"] = cjson(w);
      EvalResult r = coupling_eval(CouplingProblem::make(x), w, ctx.tol, ctx.policy);
      return {cjson(r.value), r.error_bound, {{"terms_used", r.terms_used}}};
    };
  });

  auto* cpt = common(cp->add_subcommand("zeta", "power sum of inverse squared zeros"));
  cpt->add_option("--x", x_text, "sequence spec (default reciprocal(0))");
  cpt->add_option("--n,--N", n, "order")->check(CLI::PositiveNumber);
  cpt->callback([&] {
    name = "coupling zeta";
    action = [&]() -> Output {
      Sequence x = x_text.empty() ? Sequence::reciprocal(0.0) : seq_flag("--x", x_text);
      ctx.inputs["x"] = x.str();
      ctx.inputs["n"] = n;
      CouplingProblem P = CouplingProblem::make(x);
      PowerSum s = power_sum(P, n, std::min(ctx.tol, 1e-13), ctx.policy);
      json res = s.value.imag() == 0.0 ? json(s.value.real()) : cjson(s.value);
      Output o{res, s.tail_bound, {{"truncation", s.truncation}}};
      if (P.positivity) o.extra["smallest_root_estimate"] = std::pow(s.value.real(), -0.5 / n);
      return o;
    };
  });

  auto* cpq = common(cp->add_subcommand("qairy", "spectral zeta D_N(q) of the q-Airy function"));
  cpq->add_option("--q", q_text, "0 < q < 1, decimal or p/q")->required();
  cpq->add_option("--N,--n", n, "order")->check(CLI::PositiveNumber);
  cpq->add_option("--z", z_text, "also evaluate A_q(z)");
  cpq->add_flag("--exact", exact, "rational arithmetic in q");
  cpq->callback([&] {
    name = "coupling qairy";
    action = [&]() -> Output {
      const ExactRational qe = rational_flag("--q", q_text);
      const double q = combinat::to_double(qe);
      ctx.inputs["q"] = q_text;
      ctx.inputs["N"] = n;
      json res;
      res["closed_form"] = qairy_zeta(q, n);
      res["recurrence"] = qairy_zeta_recurrence(q, n).back();
      if (exact) {
        res["closed_form_exact"] = combinat::to_string(qairy_zeta(qe, n));
        res["recurrence_exact"] = combinat::to_string(qairy_zeta_recurrence(qe, n).back());
      }
      if (!z_text.empty()) {
        const cplx z = complex_flag("--z", z_text);
        EvalResult a = qairy(q, z);
        res["A_q"] = cjson(a.value);
        res["A_q_error_bound"] = a.error_bound;
      }
      return {res, std::nullopt, {}};
    };
  });

  auto* cpr = common(cp->add_subcommand("rayleigh", "Rayleigh function sigma_nu(2N)"));
  cpr->add_option("--nu", nu, "order of the Bessel function, > -1");
  cpr->add_option("--N,--n", n, "power")->check(CLI::PositiveNumber);
  cpr->callback([&] {
    name = "coupling rayleigh";
    action = [&]() -> Output {
      ctx.inputs["nu"] = nu;
      ctx.inputs["N"] = n;
      PowerSum s = rayleigh_sigma(nu, n, std::min(ctx.tol, 1e-13));
      Output o{s.value.real(), s.tail_bound, {{"truncation", s.truncation}}};
      if (ctx.use_oracle) {
        const auto g = bessel_product_coefficients(nu, n);
        o.extra["recurrence"] = zeta_recurrence<double>(g).back();
      }
      return o;
    };
  });

  // oracle
  auto* orc = common(app.add_subcommand("oracle", "brute-force references"));
  orc->add_option("what", what, "multisum | eigen | bessel | j0zeros | bessel-c")->required();
  orc->add_option("--x", x_text, "finite sequence spec (multisum)");
  jac_opts(orc);
  orc->add_option("--n,--N", n, "truncation size (eigen)");
  orc->add_option("--count", count, "number of zeros (j0zeros)");
  orc->add_option("--nu", nu, "Bessel order");
  orc->add_option("--z", zr, "Bessel argument / c(w) argument");
  orc->callback([&] {
    name = "oracle";
    action = [&]() -> Output {
      ctx.inputs["what"] = what;
      if (what == "multisum") {
        Sequence x = seq_flag("--x", x_text);
        auto len = x.length();
        if (!len) throw FlagError("--x", "multisum needs a finite list");
        ctx.inputs["x"] = x.str();
        return {cjson(oracle::f_multisum(x.head(*len))), std::nullopt, {}};
      }
      if (what == "eigen") {
        JacobiSpec J = jacobi_from_flags(ctx, jac_text, lam_text, w_text);
        ctx.inputs["n"] = n;
        return {oracle::tridiag_eigen(J.truncation(n)), std::nullopt, {}};
      }
      if (what == "bessel") {
        ctx.inputs["nu"] = nu;
        ctx.inputs["z"] = zr;
        return {oracle::bessel_series(nu, zr), std::nullopt, {}};
      }
      if (what == "j0zeros") {
        ctx.inputs["count"] = count;
        return {oracle::bessel_j0_zeros(count), std::nullopt, {}};
      }
      if (what == "bessel-c") {
        ctx.inputs["w"] = zr;
        return {oracle::bessel_c(zr), std::nullopt, {}};
      }
      throw FlagError("what", "unknown oracle '" + what + "'");
    };
  });

  std::vector<const char*> argv{"charfact"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Output o;
  try {
    o = action();
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    json doc = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
    out << doc.dump() << '\n';
    return 3;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json manifest = {{"subcommand", name},
                   {"inputs", ctx.inputs},
                   {"tol", ctx.tol},
                   {"max_truncation", ctx.policy.max_terms},
                   {"version", kVersion},
                   {"boost", BOOST_LIB_VERSION}};
  for (auto it = o.extra.begin(); it != o.extra.end(); ++it) manifest[it.key()] = it.value();
  if (ctx.timing) manifest["wall_time_s"] = elapsed;

  json doc;
  doc["result"] = o.result;
  if (o.error_bound) doc["error_bound"] = *o.error_bound;
  doc["manifest"] = manifest;
  if (ctx.pretty) {
    print_pretty(out, doc);
  } else {
    out << doc.dump() << '\n';
  }
  return 0;
}

}  // namespace charfact::cli
