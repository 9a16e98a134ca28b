#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isodmm/dispersion.hpp"
#include "isodmm/dmm.hpp"
#include "isodmm/eigensolve.hpp"
#include "isodmm/quadrature.hpp"
#include "isodmm/study.hpp"

namespace py = pybind11;
using namespace isodmm;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

py::list fractions(const Stencil& s) {
  py::list out;
  for (const auto& v : s.values) out.append(fraction(v));
  return out;
}

Rational parse_rational(const py::handle& value) {
  Rational r(py::str(value).cast<std::string>());
  r.canonicalize();
  return r;
}

py::dict report_dict(const IdentityReport& report) {
  py::list failed;
  for (const auto& c : report.checks) {
    if (!c.passed()) {
      failed.append(py::make_tuple(c.identity, c.p, c.m, fraction(c.residual)));
    }
  }
  py::dict d;
  d["checks"] = report.checks.size();
  d["failures"] = failed;
  return d;
}

}  // namespace

PYBIND11_MODULE(isodmm, m) {
  m.doc() = "Dispersion-minimized mass and blended quadratures for B-spline eigenproblems";

  py::register_exception<DegenerateBlendError>(m, "DegenerateBlendError", PyExc_ValueError);
  py::register_exception<IndefiniteMassError>(m, "IndefiniteMassError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("knot_vector", &knot_vector, py::arg("p"), py::arg("N"));
  m.def(
      "eval_basis",
      [](int p, int N, int j, double x) { return eval_basis(BSplineSpace(p, N), j, x); },
      py::arg("p"), py::arg("N"), py::arg("j"), py::arg("x"));
  m.def(
      "eval_basis_derivative",
      [](int p, int N, int j, double x) { return eval_basis_derivative(BSplineSpace(p, N), j, x); },
      py::arg("p"), py::arg("N"), py::arg("j"), py::arg("x"));
  m.def(
      "cardinal_value",
      [](int p, const py::object& t) -> py::object {
        if (py::isinstance<py::float_>(t)) return py::float_(cardinal_value(p, t.cast<double>()));
        return fraction(cardinal_value(p, parse_rational(t)));
      },
      py::arg("p"), py::arg("t"), "Exact for int/Fraction arguments, float otherwise.");

  m.def("mass_stencil", [](int p) { return fractions(mass_stencil(p)); }, py::arg("p"));
  m.def("stiffness_stencil", [](int p) { return fractions(stiffness_stencil(p)); }, py::arg("p"));
  m.def("dmm_stencil", [](int p) { return fractions(dmm_stencil(p)); }, py::arg("p"));
  m.def(
      "leading_coefficient",
      [](int p, const std::string& mass, int order) {
        const Stencil b = mass == "dmm" ? dmm_stencil(p) : mass_stencil(p);
        return fraction(leading_coefficient(p, stiffness_stencil(p), b, order));
      },
      py::arg("p"), py::arg("mass") = "exact", py::arg("order"));
  m.def(
      "verify",
      [](int p_max) {
        IdentityReport all;
        for (int p = 1; p <= p_max; ++p) {
          all.append(verify_base_identities(p));
          if (p >= 2) all.append(verify_ab_identity(p));
          all.append(verify_dmm_identity(p));
        }
        if (p_max >= 2) all.append(fg_verify(p_max, p_max));
        return report_dict(all);
      },
      py::arg("p_max"));

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("label", &QuadratureRule::label)
      .def_readonly("exactness", &QuadratureRule::exactness)
      .def_property_readonly("nodes",
                             [](const QuadratureRule& r) {
                               return std::vector<double>(r.nodes.begin(), r.nodes.end());
                             })
      .def_property_readonly("weights",
                             [](const QuadratureRule& r) {
                               return std::vector<double>(r.weights.begin(), r.weights.end());
                             })
      .def("__repr__", [](const QuadratureRule& r) { return "<QuadratureRule " + r.label + ">"; });

  m.def("gauss_legendre", &gauss_legendre, py::arg("m"));
  m.def("gauss_lobatto", &gauss_lobatto, py::arg("m"));
  m.def("gauss_radau", &gauss_radau, py::arg("m"));
  m.def("dmm_rule", &dmm_rule, py::arg("p"), py::arg("branch") = 1);
  m.def(
      "quadrature_mass_stencil",
      [](int p, const QuadratureRule& rule) { return quadrature_mass_stencil(p, rule).values; },
      py::arg("p"), py::arg("rule"));
  m.def(
      "quadrature_stiffness_stencil",
      [](int p, const QuadratureRule& rule) { return quadrature_stiffness_stencil(p, rule).values; },
      py::arg("p"), py::arg("rule"));
  m.def(
      "optimal_tau", [](int p, const std::string& pair) { return pair_tau(p, parse_blend_pair(pair)); },
      py::arg("p"), py::arg("pair"));
  m.def(
      "triple_blend_check",
      [](int p, const QuadratureRule& a, const QuadratureRule& b, const QuadratureRule& c) {
        const auto r = triple_blend_check(p, a, b, c);
        py::dict d;
        d["rows"] = std::vector<std::vector<double>>{{r.row[0][0], r.row[0][1], r.row[0][2]},
                                                     {r.row[1][0], r.row[1][1], r.row[1][2]}};
        d["residual"] = r.residual;
        d["consistent"] = r.consistent;
        return d;
      },
      py::arg("p"), py::arg("q1"), py::arg("q2"), py::arg("q3"));

  m.def(
      "assemble_1d",
      [](int p, int N, const std::string& mass) {
        const MatrixPair pair = parse_mass_choice(mass).assemble(BSplineSpace(p, N));
        return py::make_tuple(pair.K.dense(), pair.M.dense());
      },
      py::arg("p"), py::arg("N"), py::arg("mass") = "exact",
      "Dirichlet-reduced (K, M) as dense arrays.");
  m.def(
      "generalized_eig",
      [](const Eigen::MatrixXd& K, const Eigen::MatrixXd& M) {
        return generalized_eig(K, M, false).eigenvalues;
      },
      py::arg("K"), py::arg("M"));
  m.def(
      "eigenvalues",
      [](int p, int N, const std::string& mass, int dimension) {
        const MatrixPair pair = parse_mass_choice(mass).assemble(BSplineSpace(p, N));
        const Spectrum s = generalized_eig(pair, false);
        return dimension == 2 ? tensor_spectrum_2d(s).eigenvalues : s.eigenvalues;
      },
      py::arg("p"), py::arg("N"), py::arg("mass") = "exact", py::arg("dimension") = 1);
  m.def("exact_spectrum", &exact_spectrum, py::arg("dimension"), py::arg("count"));
  m.def("relative_ev_errors", &relative_ev_errors, py::arg("discrete"), py::arg("exact"));

  m.def(
      "dispersion_curve",
      [](int p, const std::string& mass, const std::vector<double>& lambdas) {
        const MassChoice c = parse_mass_choice(mass);
        const Stencil a = stiffness_stencil(p);
        const auto exact = c.exact_row(p);
        const DispersionCurve curve =
            exact ? sample_curve(p, a, *exact, lambdas) : sample_curve(p, a, c.row(p), lambdas);
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& s : curve.samples) out.emplace_back(s.lambda, s.ratio, s.error);
        return out;
      },
      py::arg("p"), py::arg("mass"), py::arg("lambdas"));
  m.def(
      "fit_order",
      [](int p, const std::string& mass, double lo, double hi) {
        const MassChoice c = parse_mass_choice(mass);
        const Stencil a = stiffness_stencil(p);
        const auto grid = log_grid(lo, hi, 41);
        const auto exact = c.exact_row(p);
        return fit_order(exact ? sample_curve(p, a, *exact, grid) : sample_curve(p, a, c.row(p), grid),
                         lo, hi);
      },
      py::arg("p"), py::arg("mass"), py::arg("lo") = 1e-2, py::arg("hi") = 1e-1);

  m.def(
      "run_study",
      [](const std::string& config_text) {
        std::istringstream in(config_text);
        const std::string text = run_study(StudyConfig::parse(in)).to_json();
        return py::module_::import("json").attr("loads")(text);
      },
      py::arg("config"), "Runs a study from key = value text; returns the report as a dict.");
}
