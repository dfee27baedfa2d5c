#include <cmath>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curvkit/bounds.hpp"
#include "curvkit/cli.hpp"
#include "curvkit/curvature.hpp"
#include "curvkit/errors.hpp"
#include "curvkit/graph.hpp"
#include "curvkit/metric.hpp"
#include "curvkit/semigroup.hpp"
#include "curvkit/serialize.hpp"

namespace py = pybind11;
using namespace curvkit;

namespace {

Dimension dimension(double n) { return std::isinf(n) ? Dimension::infinite() : Dimension(n); }

double as_float(const ExtendedReal& v) { return v.as_double(); }

std::vector<std::vector<double>> rows(const Matrix& m) {
    std::vector<std::vector<double>> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
    return out;
}

MetricTable named_metric(const WeightedGraph& g, const std::string& kind) {
    switch (parse_metric_kind(kind)) {
        case MetricKind::huang: return huang_metric(g);
        case MetricKind::scaled_combinatorial: return scaled_combinatorial_metric(g);
        default: throw ParameterError("metric must be huang or scaled-combinatorial");
    }
}

}  // namespace

PYBIND11_MODULE(_curvkit, m) {
    m.doc() = "Bakry-Emery curvature on finite weighted graphs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<WeightedGraph>(m, "Graph")
        .def_property_readonly("names", &WeightedGraph::names)
        .def_property_readonly("label", &WeightedGraph::label)
        .def("__len__", &WeightedGraph::size)
        .def("id", [](const WeightedGraph& g, const std::string& n) { return g.id(n); })
        .def("measure", &WeightedGraph::measure)
        .def("weight", &WeightedGraph::weight)
        .def("degree", [](const WeightedGraph& g, VertexId x) { return degree(g, x); })
        .def("max_degree", [](const WeightedGraph& g) { return max_degree(g); });

    m.def(
        "load_graph",
        [](const std::string& text, const std::string& format, const std::string& measure) {
            const auto f = format == "json" ? GraphFormat::json : GraphFormat::edge_list;
            return load_graph_string(text, f, parse_measure_mode(measure));
        },
        py::arg("text"), py::arg("format") = "edge-list", py::arg("measure") = "counting");
    m.def(
        "generate",
        [](const std::string& spec, const std::string& measure) {
            return generate(parse_generator(spec), parse_measure_mode(measure));
        },
        py::arg("spec"), py::arg("measure") = "counting");

    m.def(
        "curvature",
        [](const WeightedGraph& g, VertexId x, double n) { return as_float(curvature_at(g, x, dimension(n))); },
        py::arg("graph"), py::arg("x"), py::arg("N") = INFINITY);
    m.def(
        "curvature_profile_json",
        [](const WeightedGraph& g, double n, double tau) {
            return dump(to_json(g, curvature_profile(g, dimension(n), tau)));
        },
        py::arg("graph"), py::arg("N") = INFINITY, py::arg("tau_cd") = kDefaultTauCd);

    m.def(
        "metric_table",
        [](const WeightedGraph& g, const std::string& kind) {
            auto t = named_metric(g, kind);
            const double margin = intrinsic_check(g, t);
            return py::make_tuple(rows(t.matrix()), margin);
        },
        py::arg("graph"), py::arg("kind") = "huang");
    m.def(
        "resistance",
        [](const WeightedGraph& g, VertexId x, VertexId y, double tol) {
            const auto r = resistance_metric(g, x, y, {tol});
            return py::make_tuple(r.value, r.upper_bound);
        },
        py::arg("graph"), py::arg("x"), py::arg("y"), py::arg("tol") = 1e-6);

    m.def(
        "heat_semigroup",
        [](const WeightedGraph& g, double t, const std::vector<double>& f) {
            return semigroup_apply(spectral_decompose(g), t, f);
        },
        py::arg("graph"), py::arg("t"), py::arg("f"));

    m.def("h_function", &h_function, py::arg("K"), py::arg("K0"), py::arg("T"));
    m.def(
        "certificate_json",
        [](const WeightedGraph& g, double n, const std::string& metric) {
            return dump(to_json(check_main_theorem(g, dimension(n), named_metric(g, metric))));
        },
        py::arg("graph"), py::arg("N") = INFINITY, py::arg("metric") = "scaled-combinatorial");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
