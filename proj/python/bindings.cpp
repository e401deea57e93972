#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charfact/cli.hpp"
#include "charfact/combinat.hpp"
#include "charfact/coupling.hpp"
#include "charfact/error.hpp"
#include "charfact/fcal.hpp"
#include "charfact/jacobi.hpp"
#include "charfact/oracle.hpp"
#include "charfact/sequence.hpp"

namespace py = pybind11;
using namespace charfact;

namespace {

// Sequences cross the boundary either as Sequence objects or as spec strings.
Sequence as_sequence(const py::object& o) {
  if (py::isinstance<py::str>(o)) return parse_sequence(o.cast<std::string>());
  return o.cast<Sequence>();
}

py::tuple eval_tuple(const EvalResult& r) { return py::make_tuple(r.value, r.error_bound, r.terms_used); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Characteristic functions of Jacobi operators";
  m.attr("__version__") = cli::kVersion;

  static py::exception<Error> base(m, "CharfactError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(base)(e.what());
      err.attr("kind") = to_string(e.kind());
      PyErr_SetObject(base.ptr(), err.ptr());
    }
  });

  py::class_<Sequence>(m, "Sequence")
      .def(py::init([](const std::string& spec) { return parse_sequence(spec); }), py::arg("spec"))
      .def("term", &Sequence::term)
      .def("head", &Sequence::head)
      .def("length", &Sequence::length)
      .def("pair_tail_bound", &Sequence::pair_tail_bound)
      .def("__str__", &Sequence::str)
      .def("__repr__", [](const Sequence& s) { return "Sequence('" + s.str() + "')"; });

  m.def("f_finite", [](std::vector<cplx> x) { return f_finite(x); }, py::arg("x"));
  m.def(
      "f_infinite",
      [](const py::object& x, double tol) { return eval_tuple(f_infinite(as_sequence(x), tol)); },
      py::arg("x"), py::arg("tol") = 1e-12, "(value, error_bound, terms_used)");
  m.def(
      "log_f", [](const py::object& x, double tol) { return eval_tuple(log_f(as_sequence(x), tol)); },
      py::arg("x"), py::arg("tol") = 1e-12);
  m.def(
      "log_f_series",
      [](std::vector<cplx> x, int order) {
        SeriesResult s = log_f_series(x, order);
        return py::make_tuple(s.value, s.tail_bound, s.partial_sums);
      },
      py::arg("x"), py::arg("order"));

  auto c = m.def_submodule("combinat");
  c.def("compositions", [](unsigned N) {
    std::vector<std::vector<unsigned>> out;
    for (const auto& mi : combinat::compositions(N)) out.push_back(mi.parts());
    return out;
  });
  c.def("alpha", [](std::vector<unsigned> mi) { return combinat::to_string(combinat::alpha(combinat::Multiindex(mi))); });
  c.def("beta", [](std::vector<unsigned> mi) { return combinat::beta(combinat::Multiindex(mi)).str(); });
  c.def("sum_alpha", [](unsigned N) { return combinat::to_string(combinat::sum_alpha(N)); });
  c.def("sum_beta", [](unsigned N) { return combinat::sum_beta(N).str(); });
  c.def("catalan", [](unsigned N) { return combinat::catalan(N).str(); });
  c.def("count_dyck_paths",
        [](std::vector<unsigned> mi) { return combinat::count_dyck_paths(combinat::Multiindex(mi)).str(); });
  c.def("count_loops", [](std::vector<unsigned> mi) { return combinat::count_loops(combinat::Multiindex(mi)).str(); });

  py::class_<JacobiSpec>(m, "Jacobi")
      .def(py::init([](const py::object& lam, const py::object& w) {
             return JacobiSpec::certified(as_sequence(lam), as_sequence(w));
           }),
           py::arg("lam"), py::arg("w"))
      .def_property_readonly("regular", &JacobiSpec::regular)
      .def("shifted", &JacobiSpec::shifted)
      .def("char_function",
           [](const JacobiSpec& J, cplx z, double tol) { return eval_tuple(char_function(J, z, tol)); },
           py::arg("z"), py::arg("tol") = 1e-12)
      .def("regularized",
           [](const JacobiSpec& J, cplx z, double tol) { return eval_tuple(regularized_char(J, z, tol)); },
           py::arg("z"), py::arg("tol") = 1e-12)
      .def(
          "zeros",
          [](const JacobiSpec& J, double lo, double hi, double tol) {
            ZeroSet z = find_eigenvalues(J, lo, hi, tol);
            return py::make_tuple(z.roots, z.enclosures);
          },
          py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-10)
      .def(
          "hadamard_b",
          [](const JacobiSpec& J, double cutoff, double tol) {
            HadamardB h = hadamard_b(J, eigenvalues_below(J, cutoff, tol));
            return py::make_tuple(h.b, h.tail_estimate, h.zeros_used);
          },
          py::arg("cutoff"), py::arg("tol") = 1e-12)
      .def("__str__", &JacobiSpec::str);

  m.def(
      "coupling_zeros",
      [](const py::object& x, std::size_t count, double tol) {
        CouplingZeros z = coupling_zeros(CouplingProblem::make(as_sequence(x)), count, tol);
        return py::make_tuple(z.zeta, z.enclosures);
      },
      py::arg("x"), py::arg("count"), py::arg("tol") = 1e-10);
  m.def(
      "power_sum",
      [](const py::object& x, unsigned n, double tol) {
        PowerSum s = power_sum(CouplingProblem::make(as_sequence(x)), n, tol);
        return py::make_tuple(s.value, s.tail_bound);
      },
      py::arg("x"), py::arg("n"), py::arg("tol") = 1e-13);
  m.def("rayleigh_sigma", [](double nu, unsigned N) { return rayleigh_sigma(nu, N).value.real(); },
        py::arg("nu"), py::arg("N"));
  m.def("qairy", [](double q, cplx z) { return qairy(q, z).value; }, py::arg("q"), py::arg("z"));
  m.def("qairy_sequence", &qairy_sequence, py::arg("q"), py::arg("w") = cplx(1.0));
  m.def("qairy_zeta", [](double q, unsigned N) { return qairy_zeta(q, N); }, py::arg("q"), py::arg("N"));
  m.def(
      "qairy_zeta_exact",
      [](long p, long r, unsigned N) { return combinat::to_string(qairy_zeta(combinat::ExactRational(p, r), N)); },
      py::arg("num"), py::arg("den"), py::arg("N"));

  auto o = m.def_submodule("oracle");
  o.def("f_multisum", [](std::vector<cplx> x) { return oracle::f_multisum(x); });
  o.def("bessel", &oracle::bessel_series, py::arg("nu"), py::arg("z"), py::arg("tol") = 1e-17);
  o.def("j0_zeros", &oracle::bessel_j0_zeros);

  m.def("cli", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
