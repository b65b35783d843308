#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfc/functors.hpp"
#include "mfc/qcalc.hpp"
#include "mfc/suites.hpp"
#include "mfc/textio.hpp"

namespace py = pybind11;
using namespace mfc;

namespace {

// Python-side handle; charts are immutable and shared.
struct PyChart {
  ChartPtr ptr;
};

ChartPtr make_chart(const std::string& name, const std::vector<std::pair<std::string, std::string>>& vars) {
  std::vector<Variable> vs;
  for (const auto& [n, p] : vars) {
    if (p != "even" && p != "odd") throw Error("parity must be 'even' or 'odd', got '" + p + "'");
    vs.push_back(Variable::base(n, p == "odd" ? Parity::odd : Parity::even));
  }
  return Chart::make(name, std::move(vs));
}

Kind kind_of(const std::string& k) {
  if (k == "even") return Kind::even;
  if (k == "odd") return Kind::odd;
  throw Error("kind must be 'even' or 'odd', got '" + k + "'");
}

py::list checks_of(const Report& r) {
  py::list out;
  for (const auto& c : r.checks())
    out.append(py::make_tuple(c.name, c.passed, c.residual ? serialize(*c.residual) : std::string()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_mfc, m) {
  m.doc() = "Symbolic engine for thick morphisms of supermanifolds";

  auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<PyChart>(m, "Chart")
      .def(py::init([](const std::string& name, const std::vector<std::pair<std::string, std::string>>& vars) {
             return PyChart{make_chart(name, vars)};
           }),
           py::arg("name"), py::arg("variables"))
      .def_property_readonly("name", [](const PyChart& c) { return c.ptr->name(); })
      .def_property_readonly("variables", [](const PyChart& c) {
        std::vector<std::string> out;
        for (const auto& v : c.ptr->variables()) out.push_back(v.name);
        return out;
      })
      .def("parity", [](const PyChart& c, const std::string& v) {
        return std::string(to_string((*c.ptr)[c.ptr->index_of(v)].parity));
      })
      .def("__len__", [](const PyChart& c) { return c.ptr->size(); });

  py::class_<SuperSeries>(m, "Series")
      .def(py::init([](const std::string& text, const PyChart& c, int order) {
             return parse_expression(text, c.ptr, order);
           }),
           py::arg("text"), py::arg("chart"), py::arg("order") = 0)
      .def_property_readonly("chart", [](const SuperSeries& s) { return PyChart{s.chart()}; })
      .def_property_readonly("order", &SuperSeries::order)
      .def_property_readonly("parity", [](const SuperSeries& s) -> std::optional<std::string> {
        if (auto p = s.parity()) return std::string(to_string(*p));
        return std::nullopt;
      })
      .def("is_zero", &SuperSeries::is_zero)
      .def("partial", [](const SuperSeries& s, const std::string& v) { return partial(s, v); })
      .def("__str__", [](const SuperSeries& s) { return serialize(s); })
      .def("__repr__", [](const SuperSeries& s) { return "Series('" + serialize(s) + "')"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self == py::self)
      .def(-py::self)
      .def("__mul__", [](const SuperSeries& a, const SuperSeries& b) { return mul(a, b); });

  py::class_<ThickMorphism>(m, "Morphism")
      .def(py::init([](const PyChart& source, const PyChart& target, const std::string& kind,
                       const std::string& S, int order, bool strict) {
             const Kind k = kind_of(kind);
             const ChartPtr G = generating_chart(source.ptr, target.ptr, k);
             return mk_thick(source.ptr, target.ptr, k, parse_expression(S, G, order), order, strict);
           }),
           py::arg("source"), py::arg("target"), py::arg("kind"), py::arg("S"), py::arg("order") = 3,
           py::arg("strict") = true)
      .def_property_readonly("kind", [](const ThickMorphism& p) { return std::string(to_string(p.kind)); })
      .def_property_readonly("S", [](const ThickMorphism& p) { return p.S; })
      .def_property_readonly("source", [](const ThickMorphism& p) { return PyChart{p.source}; })
      .def_property_readonly("target", [](const ThickMorphism& p) { return PyChart{p.target}; })
      .def_property_readonly("order", [](const ThickMorphism& p) { return p.order; })
      .def("base_map", [](const ThickMorphism& p) { return base_map(p).components; })
      .def("relation_passed", [](const ThickMorphism& p) { return relation_check(p).passed(); });

  m.def("pullback", &pullback, py::arg("morphism"), py::arg("function"), py::arg("eps_order") = 2);
  m.def("compose", py::overload_cast<const ThickMorphism&, const ThickMorphism&, int>(&compose),
        py::arg("outer"), py::arg("inner"), py::arg("order") = 3);
  m.def("tangent_lift", &tangent_lift);
  m.def("antitangent_lift", &antitangent_lift);
  m.def("check_antitangent_q", [](const ThickMorphism& p) { return checks_of(check_antitangent_q(p)); });

  py::class_<Workspace>(m, "Workspace")
      .def_property_readonly("morphisms", [](const Workspace& w) {
        std::vector<std::string> out;
        for (const auto& [k, v] : w.morphisms) out.push_back(k);
        return out;
      })
      .def_property_readonly("functions", [](const Workspace& w) {
        std::vector<std::string> out;
        for (const auto& [k, v] : w.functions) out.push_back(k);
        return out;
      })
      .def_property_readonly("order", [](const Workspace& w) { return w.settings.order; })
      .def_property_readonly("eps_order", [](const Workspace& w) { return w.settings.eps_order; })
      .def("morphism", &Workspace::morphism, py::return_value_policy::copy)
      .def("function", [](const Workspace& w, const std::string& n) { return w.function(n).value; });

  m.def("parse_workspace", &parse_workspace, py::arg("text"), py::arg("strict") = std::nullopt);
  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, int trials, int order) {
        return checks_of(run_suite(name, SuiteOptions{seed, trials, order}));
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("trials") = 20, py::arg("order") = 3);
}
