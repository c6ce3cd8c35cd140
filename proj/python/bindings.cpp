#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fncalc/harness.hpp"

namespace py = pybind11;
using namespace fncalc;

namespace {

Poly parse_in(const std::string& text, std::size_t nvars) { return parse_poly(text, variable_names(nvars)); }

std::string verify(const std::string& model_json, const std::vector<std::string>& suites, const std::string& backend,
                   std::size_t samples, std::uint64_t seed, const std::string& format) {
  RunOptions o;
  o.suites = suites;
  o.backend = parse_backend(backend);
  o.samples = samples;
  o.seed = seed;
  const ModelSpec spec = model_from_json(model_json);
  Report r;
  {
    py::gil_scoped_release release;
    r = run_suites(spec, o);
  }
  if (format == "json") return emit_json(r);
  if (format == "text") return emit_text(r);
  throw Error("unknown format: " + format);
}

}  // namespace

PYBIND11_MODULE(_fncalc, m) {
  m.doc() = "Exact Frolicher-Nijenhuis calculus on polynomial models";

  auto base = py::register_exception<Error>(m, "FncalcError");
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<Poly>(m, "Poly")
      .def(py::init(&parse_in), py::arg("text"), py::arg("nvars"))
      .def_property_readonly("nvars", &Poly::nvars)
      .def("is_zero", &Poly::is_zero)
      .def("degree", &Poly::degree)
      .def("diff", &Poly::diff, py::arg("var"))
      // Rationals cross the boundary as strings such as "-3/4".
      .def("eval",
           [](const Poly& p, const std::vector<std::string>& point) {
             std::vector<Rational> q;
             for (const auto& s : point) q.push_back(parse_rational(s));
             if (q.size() != p.nvars()) throw DimensionError("point has the wrong number of coordinates");
             return to_string(p.eval(q));
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", [](const Poly& p) { return p.to_string(variable_names(p.nvars())); })
      .def("__repr__", [](const Poly& p) {
        return "Poly('" + p.to_string(variable_names(p.nvars())) + "', " + std::to_string(p.nvars()) + ")";
      });

  m.def("variable_names", &variable_names, py::arg("nvars"));
  m.def(
      "generate",
      [](const std::string& kind, std::size_t n, std::size_t degree, std::uint64_t seed) {
        return model_to_json(generate(parse_model_kind(kind), n, degree, seed));
      },
      py::arg("kind"), py::arg("n") = 1, py::arg("degree") = 1, py::arg("seed") = 42,
      "Built-in model as a JSON string.");
  m.def("verify", &verify, py::arg("model_json"), py::arg("suites") = std::vector<std::string>{"all"},
        py::arg("backend") = "exact", py::arg("samples") = 100, py::arg("seed") = 1, py::arg("format") = "json",
        "Run the identity suites on a model given as JSON; returns the report text.");
  m.def("catalog", [] {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& e : catalog()) out.emplace_back(e.suite, e.id, e.statement);
    return out;
  });
  m.def("suite_names", &suite_names);
  m.attr("POINT_TOLERANCE") = kPointTolerance;
}
