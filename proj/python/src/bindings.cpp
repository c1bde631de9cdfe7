#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <utility>

#include "singchi/curve.hpp"
#include "singchi/errors.hpp"
#include "singchi/filtration.hpp"
#include "singchi/integral.hpp"
#include "singchi/oracle.hpp"

namespace py = pybind11;
using namespace singchi;

namespace {

py::int_ to_py(const BigInt& value) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(value.get_str().c_str(), nullptr, 10));
}

// {exponent tuple: coefficient}
py::dict poly_to_dict(const MultiPoly& p) {
  py::dict out;
  for (const auto& [e, c] : p.terms()) {
    py::tuple key(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) key[i] = e[i];
    out[key] = to_py(c);
  }
  return out;
}

py::dict motivic_to_dict(const MotivicClass& m) {
  py::dict out;
  for (const auto& [e, c] : m.terms()) out[py::int_(e)] = to_py(c);
  return out;
}

IntegralOptions options(std::optional<unsigned> bound, unsigned threads) {
  IntegralOptions o;
  o.bound = bound;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Alexander polynomial and monodromy zeta function of plane curve singularities";

  auto base = py::register_exception<Error>(m, "SingchiError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<NotStabilized>(m, "NotStabilized", base);
  py::register_exception<NotCoprime>(m, "NotCoprime", base);
  py::register_exception<InternalMismatch>(m, "InternalMismatch", base);

  py::class_<Curve>(m, "Curve")
      .def_property_readonly("name", &Curve::name)
      .def_property_readonly("r", &Curve::r)
      .def_property_readonly("branches",
                             [](const Curve& c) {
                               py::list out;
                               for (const auto& b : c.branches()) out.append(py::make_tuple(b.x.to_string(), b.y.to_string()));
                               return out;
                             })
      .def("to_string", &Curve::to_string)
      .def("__eq__", [](const Curve& a, const Curve& b) { return a == b; })
      .def("__repr__", [](const Curve& c) {
        return "<Curve '" + c.name() + "' with " + std::to_string(c.r()) + " branch(es)>";
      });

  m.def("parse_curve", &parse_curve, py::arg("text"), py::arg("name") = "curve");
  m.def("load_curve", &load_curve, py::arg("path"));

  py::class_<CodimTable>(m, "CodimTable")
      .def(py::init<Curve>(), py::arg("curve"))
      .def_property_readonly("curve", &CodimTable::curve)
      .def_property_readonly("r", &CodimTable::r)
      .def("codim", &CodimTable::codim, py::arg("v"), py::call_guard<py::gil_scoped_release>())
      .def("codim_at_level", &CodimTable::codim_at_level, py::arg("v"), py::arg("jet_level"),
           py::call_guard<py::gil_scoped_release>());

  m.def("fiber_chi", &fiber_chi, py::arg("table"), py::arg("v"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "alexander",
      [](const CodimTable& table, std::optional<unsigned> bound, unsigned threads) {
        MultiPoly d(1);
        {
          py::gil_scoped_release release;
          d = alexander(table, options(bound, threads));
        }
        return poly_to_dict(d);
      },
      py::arg("table"), py::arg("bound") = py::none(), py::arg("threads") = 1,
      "Delta as {exponent tuple: coefficient}.");
  m.def(
      "zeta",
      [](const CodimTable& table, std::optional<unsigned> bound, unsigned threads) {
        ZetaResult z;
        {
          py::gil_scoped_release release;
          z = zeta(table, options(bound, threads));
        }
        return py::make_tuple(poly_to_dict(z.numerator), z.has_denominator);
      },
      py::arg("table"), py::arg("bound") = py::none(), py::arg("threads") = 1,
      "(numerator, has_denominator); zeta = numerator / (1 - t) when has_denominator.");
  m.def(
      "motivic_fiber_class",
      [](const CodimTable& table, const MultiIndex& v, std::optional<unsigned> jet_level) {
        const MotivicClass cls = motivic_fiber_class(table, v, jet_level.value_or(default_jet_level(v)));
        return motivic_to_dict(cls);
      },
      py::arg("table"), py::arg("v"), py::arg("jet_level") = py::none(),
      "Class in Z[L, 1/L] as {exponent of L: coefficient}.");
  m.def(
      "semigroup",
      [](const Curve& curve, std::size_t branch) {
        const auto sg = semigroup_generators(curve.branch(branch));
        py::dict out;
        out["generators"] = sg.generators();
        out["conductor"] = sg.conductor();
        out["gaps"] = sg.gaps();
        return out;
      },
      py::arg("curve"), py::arg("branch") = 0);
  m.def("torus_knot_alexander",
        [](unsigned p, unsigned q) { return poly_to_dict(torus_knot_alexander(p, q)); }, py::arg("p"),
        py::arg("q"));
  m.def(
      "verify",
      [](const CodimTable& table, std::optional<unsigned> bound, unsigned threads) {
        VerificationReport report;
        {
          py::gil_scoped_release release;
          report = verify(table, options(bound, threads));
        }
        py::list items;
        for (const auto& it : report.items) {
          py::dict d;
          d["name"] = it.name;
          d["applicable"] = it.applicable;
          d["passed"] = it.passed;
          d["detail"] = it.detail;
          items.append(d);
        }
        return py::make_tuple(report.all_passed(), items);
      },
      py::arg("table"), py::arg("bound") = py::none(), py::arg("threads") = 1,
      "(all_passed, items).");
}
