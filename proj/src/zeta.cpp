#include "gzeta/zeta.hpp"

#include "gzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gzeta {

namespace {

using linalg::ipow;
using linalg::scaled_error;

int excess(const MixedGraph& graph) { return graph.edge_count() - graph.vertex_count(); }

int require_regular(const MixedGraph& graph, const char* what) {
    auto d = graph.regular_degree();
    if (!d) throw InputError(std::string(what) + " requires a regular graph");
    return *d;
}

std::vector<double> real_parts(const SpectrumResult& s) {
    std::vector<double> out;
    out.reserve(s.eigenvalues.size());
    for (Complex z : s.eigenvalues) out.push_back(z.real());
    return out;
}

// Removes the element of values closest to target.
void remove_nearest(std::vector<Complex>& values, Complex target) {
    auto it = std::min_element(values.begin(), values.end(), [&](Complex a, Complex b) {
        return std::abs(a - target) < std::abs(b - target);
    });
    if (it != values.end()) values.erase(it);
}

void add_pole(std::vector<Pole>& poles, Complex value, int multiplicity, double merge_tolerance) {
    for (Pole& p : poles) {
        if (std::abs(p.value - value) <= merge_tolerance) {
            p.multiplicity += multiplicity;
            return;
        }
    }
    poles.push_back({value, multiplicity});
}

}  // namespace

int PoleSet::total_multiplicity() const {
    return std::accumulate(poles.begin(), poles.end(), 0, [](int acc, const Pole& p) { return acc + p.multiplicity; });
}

Complex zeta_reciprocal(const OperatorBundle& bundle, Complex u) {
    const auto arcs = bundle.U_theta.rows();
    return linalg::determinant(ComplexMatrix::Identity(arcs, arcs) - u * bundle.U_theta);
}

Complex zeta_reciprocal(const MixedGraph& graph, Complex u) { return zeta_reciprocal(build_bundle(graph), u); }

ReducedForms zeta_reciprocal_reduced(const MixedGraph& graph, const OperatorBundle& bundle, Complex u) {
    const int n = graph.vertex_count();
    const Complex prefactor = ipow(1.0 - u * u, excess(graph));
    const ComplexMatrix In = ComplexMatrix::Identity(n, n);

    ReducedForms forms;
    forms.normalized = prefactor * linalg::determinant((1.0 + u * u) * In - 2.0 * u * bundle.H_tilde);

    double degree_product = 1.0;
    for (int d : graph.degrees()) degree_product *= d;
    forms.degree_form =
        prefactor * linalg::determinant((1.0 + u * u) * bundle.D - 2.0 * u * bundle.H_theta) / degree_product;
    return forms;
}

DeterminantCheck check_determinant_identity(const MixedGraph& graph, const OperatorBundle& bundle, Complex u,
                                            double tolerance) {
    DeterminantCheck check;
    check.direct = zeta_reciprocal(bundle, u);
    check.reduced = zeta_reciprocal_reduced(graph, bundle, u);
    check.forms_error = scaled_error(check.reduced.normalized, check.reduced.degree_form);
    check.direct_error = scaled_error(check.direct, check.reduced.normalized);
    check.passed = check.forms_error <= tolerance / 10.0 && check.direct_error <= tolerance;
    return check;
}

Complex regular_product_form(const MixedGraph& graph, const OperatorBundle& bundle, Complex u) {
    const double degree = require_regular(graph, "regular product form");
    Complex value = ipow(1.0 - u * u, excess(graph));
    for (double lambda : real_parts(linalg::eigenvalues(bundle.H_theta, true))) {
        value *= u * u - 2.0 * lambda / degree * u + 1.0;
    }
    return value;
}

Complex grover_zeta_reciprocal_via_walk(const MixedGraph& graph, const OperatorBundle& bundle, Complex u) {
    const int n = graph.vertex_count();
    return ipow(1.0 - u * u, excess(graph)) *
           linalg::determinant((1.0 + u * u) * ComplexMatrix::Identity(n, n) - 2.0 * u * bundle.T);
}

Complex grover_zeta_regular_product(const MixedGraph& graph, const OperatorBundle& bundle, Complex u) {
    const double degree = require_regular(graph, "regular product form");
    Complex value = ipow(1.0 - u * u, excess(graph));
    for (double lambda : linalg::symmetric_eigenvalues(bundle.A.real())) {
        value *= u * u - 2.0 * lambda / degree * u + 1.0;
    }
    return value;
}

IharaEvaluation ihara_reciprocal(const MixedGraph& graph, Complex u, double tolerance) {
    if (!graph.connected()) throw InputError("Ihara zeta evaluation requires a connected graph");
    ComplexMatrix edge = ihara_edge_matrix(graph);  // checks undirected + md2
    const auto arcs = edge.rows();

    IharaEvaluation eval;
    // U^+ is the transpose of B - J0; the determinant is transpose-invariant.
    eval.edge_matrix_form = linalg::determinant(ComplexMatrix::Identity(arcs, arcs) - u * edge.transpose());

    if (auto d = graph.regular_degree()) {
        const int n = graph.vertex_count();
        const double q = *d - 1;
        const Complex prefactor = ipow(1.0 - u * u, excess(graph));
        RealMatrix adjacency = RealMatrix::Zero(n, n);
        for (const Arc& a : graph.arcs()) adjacency(a.origin, a.terminus) = 1.0;

        ComplexMatrix vertex_form = ComplexMatrix::Identity(n, n) * (1.0 + q * u * u) - u * adjacency.cast<Complex>();
        eval.vertex_determinant = prefactor * linalg::determinant(vertex_form);

        Complex product = prefactor;
        for (double lambda : linalg::symmetric_eigenvalues(adjacency)) product *= 1.0 - lambda * u + q * u * u;
        eval.vertex_product = product;

        for (Complex other : {*eval.vertex_determinant, *eval.vertex_product}) {
            if (scaled_error(eval.edge_matrix_form, other) > tolerance) {
                throw IdentityViolation("Ihara determinant forms disagree: edge matrix " +
                                        std::to_string(std::abs(eval.edge_matrix_form)) + " vs vertex form " +
                                        std::to_string(std::abs(other)));
            }
        }
    }
    return eval;
}

SpectralMapping spectrum_via_mapping(const MixedGraph& graph, const OperatorBundle& bundle, double tolerance) {
    if (!graph.connected()) throw InputError("spectral mapping requires a connected graph");
    SpectralMapping result;
    result.signed_padding = excess(graph);

    for (double lambda : real_parts(linalg::eigenvalues(bundle.H_tilde, true))) {
        // sqrt(1 - lambda^2) amplifies rounding near +-1 to ~1e-8; snap those.
        if (std::abs(1.0 - std::abs(lambda)) <= 1e-10) lambda = lambda > 0.0 ? 1.0 : -1.0;
        double root = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
        result.mapped.emplace_back(lambda, root);
        result.mapped.emplace_back(lambda, -root);
    }
    if (result.signed_padding >= 0) {
        result.mapped.insert(result.mapped.end(), static_cast<std::size_t>(result.signed_padding), Complex(1.0));
        result.mapped.insert(result.mapped.end(), static_cast<std::size_t>(result.signed_padding), Complex(-1.0));
    } else {
        // Trees: the factor (lambda^2 - 1)^{m-n} cancels +-1 roots of the vertex part.
        for (int i = 0; i < -result.signed_padding; ++i) {
            remove_nearest(result.mapped, 1.0);
            remove_nearest(result.mapped, -1.0);
        }
    }
    result.mapped = linalg::sorted(std::move(result.mapped));
    result.direct = linalg::sorted(linalg::eigenvalues(bundle.U_theta, false).eigenvalues);

    MatchResult match = linalg::match_multisets(result.mapped, result.direct);
    result.max_distance = match.max_distance;
    if (!(result.max_distance <= tolerance)) {
        throw IdentityViolation("spectrum of U_theta does not match the mapped spectrum of H_tilde (distance " +
                                std::to_string(result.max_distance) + ")");
    }
    return result;
}

ZetaSeries series_coefficients(const OperatorBundle& bundle, int order) {
    if (order < 1) throw InputError("series order must be >= 1");
    ZetaSeries series;
    series.provenance = SeriesProvenance::Trace;
    series.coefficients = linalg::trace_powers(linalg::transpose(bundle.U_theta), order);
    return series;
}

Complex zeta_from_series(const ZetaSeries& series, Complex u) {
    if (std::abs(u) >= 0.98) throw InputError("series evaluation refused for |u| >= 0.98");
    Complex log_zeta = 0.0;
    Complex power = 1.0;
    for (int k = 1; k <= series.order(); ++k) {
        power *= u;
        log_zeta += series.n(k) * power / static_cast<double>(k);
    }
    return std::exp(log_zeta);
}

PoleSet poles_regular(const MixedGraph& graph, const OperatorBundle& bundle, double unit_tolerance,
                      double det_tolerance) {
    if (!graph.connected()) throw InputError("pole computation requires a connected graph");
    const double degree = require_regular(graph, "pole computation");
    constexpr double kMerge = 1e-7;

    std::vector<Pole> poles;
    for (double lambda : real_parts(linalg::eigenvalues(bundle.H_theta, true))) {
        double c = lambda / degree;
        // Rounding past +-1 would turn the double root into a real pair ~sqrt(eps) apart.
        if (std::abs(1.0 - std::abs(c)) <= 1e-10) c = c > 0.0 ? 1.0 : -1.0;
        const Complex root = std::sqrt(Complex(c * c - 1.0));
        for (Complex pole : {c + root, c - root}) {
            if (std::abs(c) < 1.0 && std::abs(std::abs(pole) - 1.0) > unit_tolerance) {
                throw IdentityViolation("pole off the unit circle for |lambda| < q+1");
            }
            add_pole(poles, pole, 1, kMerge);
        }
    }
    add_pole(poles, 1.0, excess(graph), kMerge);
    add_pole(poles, -1.0, excess(graph), kMerge);
    std::erase_if(poles, [](const Pole& p) { return p.multiplicity == 0; });
    std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });

    for (const Pole& p : poles) {
        if (p.multiplicity < 0) continue;
        double residual = std::abs(zeta_reciprocal(bundle, p.value));
        if (residual > det_tolerance) {
            throw IdentityViolation("det(I - u U_theta) = " + std::to_string(residual) + " at a predicted pole");
        }
    }
    PoleSet set{std::move(poles)};
    if (set.total_multiplicity() != graph.arc_count()) {
        throw IdentityViolation("pole multiplicities sum to " + std::to_string(set.total_multiplicity()) +
                                ", expected 2m = " + std::to_string(graph.arc_count()));
    }
    return set;
}

}  // namespace gzeta
