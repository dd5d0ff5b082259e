#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "poissonlab/expr.hpp"
#include "poissonlab/report.hpp"

namespace py = pybind11;
using namespace poissonlab;

namespace {

std::string report_json(const Report& r) { return Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}}.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Schouten brackets and Poisson deformation certificates";
    m.attr("__version__") = kToolVersion;

    py::register_exception<SyntaxError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);

    m.def(
        "bracket",
        [](const std::string& a, const std::string& b) {
            Chart c = infer_chart({a, b});
            return schouten_formed(parse_field(a, c), parse_field(b, c)).str();
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "classify_json",
        [](const std::string& manifold, const std::string& poisson, int degree) {
            return classify(manifold, poisson, degree).to_json();
        },
        py::arg("manifold"), py::arg("poisson"), py::arg("degree") = 0);
    m.def(
        "reverify_json",
        [](const std::string& cert) {
            std::string why;
            bool ok = reverify(Certificate::from_json(cert), &why);
            return py::make_tuple(ok, why);
        },
        py::arg("certificate"));
    m.def(
        "table_json",
        [](const std::string& kind) {
            if (kind == "ruled") return ruled_table(10).dump();
            if (kind == "hopf") return hopf_tables().dump();
            if (kind == "products") return products_table().dump();
            throw std::invalid_argument("unknown table " + kind);
        },
        py::arg("kind"));
    m.def("family_names", &family_names);
    m.def(
        "verify_family_json",
        [](const std::string& name, bool uncorrected) { return report_json(verify_named_family(name, uncorrected)); },
        py::arg("name"), py::arg("uncorrected") = false);
    m.def("mc_names", &mc_names);
    m.def(
        "mc_check_json", [](const std::string& name) { return report_json(mc_check(name)); }, py::arg("name"));
    m.def("report_json", [] { return full_report().dump(); });
}
