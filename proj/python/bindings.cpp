#include "gzeta/cycles.hpp"
#include "gzeta/errors.hpp"
#include "gzeta/experiments.hpp"
#include "gzeta/graph.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/trace_formula.hpp"
#include "gzeta/zeta.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gzeta;

namespace {

py::dict summary_of(const TraceFormulaReport& r) {
    py::dict d;
    d["theorem"] = to_string(r.theorem);
    d["lhs"] = r.lhs;
    d["lhs_all"] = r.lhs_all;
    d["identity_term"] = r.identity_term;
    d["cycle_term"] = r.cycle_term;
    d["rhs_printed"] = r.rhs_printed;
    d["oracle_value"] = r.oracle_value;
    d["residual_printed"] = r.residual_printed;
    d["residual_oracle"] = r.residual_oracle;
    d["classes_used"] = r.classes_used;
    return d;
}

TraceFormulaReport trace_check(const MixedGraph& g, const std::string& which, std::vector<Complex> h,
                               int max_length) {
    OperatorBundle b = build_bundle(g);
    TestFunction f = TestFunction::cosine_polynomial(std::move(h));
    if (max_length < 1) max_length = std::max(f.degree(), 1);
    if (which == "twisted") return evaluate_twisted_trace(g, b, f, max_length);
    if (which == "untwisted") return evaluate_untwisted_trace(g, b, f, max_length);
    if (which == "ahumada") return evaluate_ahumada(g, b, f, max_length);
    throw InputError("unknown trace formula '" + which + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Twisted Grover matrices, zeta functions and trace formulas of mixed graphs";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<IdentityViolation>(m, "IdentityViolation", PyExc_ArithmeticError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<MixedGraph>(m, "MixedGraph")
        .def_property_readonly("n", &MixedGraph::vertex_count)
        .def_property_readonly("m", &MixedGraph::edge_count)
        .def_property_readonly("arc_count", &MixedGraph::arc_count)
        .def_property_readonly("connected", &MixedGraph::connected)
        .def_property_readonly("regular_degree", &MixedGraph::regular_degree)
        .def_property_readonly("degrees", &MixedGraph::degrees)
        .def_property_readonly("edges",
                               [](const MixedGraph& g) {
                                   py::list out;
                                   for (const Edge& e : g.edges())
                                       out.append(py::make_tuple(e.u, e.v, e.kind == EdgeKind::Directed, e.phase));
                                   return out;
                               })
        .def("girth", [](const MixedGraph& g) { return girth(g); })
        .def("serialize", [](const MixedGraph& g) { return serialize(g); })
        .def("__repr__", [](const MixedGraph& g) {
            return "<MixedGraph n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("parse", [](const std::string& text) { return parse_mixed_graph(text); }, py::arg("text"));
    m.def("generate", [](const std::string& spec, std::uint64_t seed) { return generate(spec, seed); },
          py::arg("spec"), py::arg("seed") = 0);
    m.def(
        "orient_random",
        [](const MixedGraph& g, double fraction, bool zero_phases, std::uint64_t seed) {
            return orient_random(g, fraction, zero_phases ? PhaseMode::Zero : PhaseMode::Uniform, seed);
        },
        py::arg("graph"), py::arg("fraction"), py::arg("zero_phases") = false, py::arg("seed") = 0);

    m.def(
        "matrix",
        [](const MixedGraph& g, const std::string& name) { return named_matrix(g, build_bundle(g), name); },
        py::arg("graph"), py::arg("name"), "One of A, D, T, K, C, S, U, H, Htilde, B, Grover as a complex array.");

    m.def("zeta_reciprocal", [](const MixedGraph& g, Complex u) { return zeta_reciprocal(g, u); },
          py::arg("graph"), py::arg("u"), "det(I - u U_theta)");
    m.def(
        "reduced_forms",
        [](const MixedGraph& g, Complex u) {
            ReducedForms r = zeta_reciprocal_reduced(g, build_bundle(g), u);
            return py::make_tuple(r.normalized, r.degree_form);
        },
        py::arg("graph"), py::arg("u"));
    m.def(
        "spectral_mapping",
        [](const MixedGraph& g) {
            SpectralMapping s = spectrum_via_mapping(g, build_bundle(g));
            return py::make_tuple(s.mapped, s.direct, s.max_distance);
        },
        py::arg("graph"));
    m.def(
        "series",
        [](const MixedGraph& g, int order) { return series_coefficients(build_bundle(g), order).coefficients; },
        py::arg("graph"), py::arg("order"), "N_1..N_order from trace powers");
    m.def(
        "euler_series", [](const MixedGraph& g, int order) { return euler_log_coefficients(g, order).coefficients; },
        py::arg("graph"), py::arg("order"), "N_1..N_order from prime cycle classes");
    m.def("walk_count", [](const MixedGraph& g, int k) { return n_k_bruteforce(g, k); }, py::arg("graph"),
          py::arg("k"));
    m.def(
        "prime_classes",
        [](const MixedGraph& g, int max_length, bool reduced) {
            py::list out;
            for (const PrimeCycleClass& c : enumerate_prime_classes(g, max_length, reduced))
                out.append(py::make_tuple(c.canonical_arcs, c.weight, c.reduced));
            return out;
        },
        py::arg("graph"), py::arg("max_length"), py::arg("reduced_only") = false);
    m.def(
        "poles",
        [](const MixedGraph& g) {
            py::list out;
            for (const Pole& p : poles_regular(g, build_bundle(g)).poles)
                out.append(py::make_tuple(p.value, p.multiplicity));
            return out;
        },
        py::arg("graph"));
    m.def(
        "ihara",
        [](const MixedGraph& g, Complex u) {
            IharaEvaluation e = ihara_reciprocal(g, u);
            return py::make_tuple(e.edge_matrix_form, e.vertex_determinant, e.vertex_product);
        },
        py::arg("graph"), py::arg("u"));
    m.def(
        "trace_check",
        [](const MixedGraph& g, const std::string& which, std::vector<Complex> h, int max_length) {
            return summary_of(trace_check(g, which, std::move(h), max_length));
        },
        py::arg("graph"), py::arg("formula") = "twisted", py::arg("h") = std::vector<Complex>{1.0},
        py::arg("max_length") = 0, "h is given by cosine coefficients a_0, a_1, ...");

    m.def("mckay_density", &mckay_density, py::arg("lam"), py::arg("q"));
    m.def(
        "density_experiment",
        [](int q, const std::vector<int>& sizes, double bin_width, std::uint64_t seed) {
            DensityReport r = density_experiment(q, sizes, bin_width, seed);
            py::list samples;
            for (const DensitySample& s : r.samples) {
                py::dict d;
                d["n"] = s.n;
                d["histogram"] = s.histogram;
                d["l1_distance"] = s.l1_distance;
                d["spectral_radius"] = s.spectral_radius;
                d["girth"] = s.girth;
                samples.append(d);
            }
            py::dict out;
            out["bin_edges"] = r.bin_edges;
            out["reference"] = r.reference;
            out["samples"] = samples;
            return out;
        },
        py::arg("q") = 2, py::arg("sizes") = std::vector<int>{100, 1000}, py::arg("bin_width") = 0.25,
        py::arg("seed") = 0);
    m.def(
        "fuzz",
        [](int count, std::uint64_t seed) {
            FuzzSummary s = fuzz_identities(count, seed);
            py::dict worst;
            for (const CheckTally& t : s.checks) worst[py::str(t.name)] = t.worst;
            py::dict out;
            out["cases"] = s.cases;
            out["passed"] = s.passed;
            out["failures"] = s.failures;
            out["worst"] = worst;
            return out;
        },
        py::arg("count") = 50, py::arg("seed") = 0);
}
