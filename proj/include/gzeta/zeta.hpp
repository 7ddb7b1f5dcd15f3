#pragma once

#include "gzeta/graph.hpp"
#include "gzeta/linalg.hpp"
#include "gzeta/operators.hpp"

#include <optional>
#include <vector>

namespace gzeta {

enum class SeriesProvenance { Trace, Cycles };

// Coefficients N_1..N_L of log Z_theta(u) = sum_k N_k u^k / k.
struct ZetaSeries {
    std::vector<Complex> coefficients;  // coefficients[k-1] = N_k
    SeriesProvenance provenance = SeriesProvenance::Trace;

    int order() const { return static_cast<int>(coefficients.size()); }
    Complex n(int k) const { return coefficients.at(static_cast<std::size_t>(k - 1)); }
};

struct Pole {
    Complex value;
    int multiplicity = 0;
};

struct PoleSet {
    std::vector<Pole> poles;  // sorted by (re, im)
    int total_multiplicity() const;
};

// The two reduced right-hand sides of the determinant identity.
struct ReducedForms {
    Complex normalized;   // (1-u^2)^{m-n} det((1+u^2) I - 2u H_tilde)
    Complex degree_form;  // (1-u^2)^{m-n} det((1+u^2) D - 2u H_theta) / prod d_v
};

struct DeterminantCheck {
    Complex direct;
    ReducedForms reduced;
    double forms_error = 0.0;   // scaled |normalized - degree_form|
    double direct_error = 0.0;  // scaled |direct - normalized|
    bool passed = false;
};

struct SpectralMapping {
    std::vector<Complex> mapped;  // lambda_H +- i sqrt(1 - lambda_H^2), padded or trimmed by +-1
    std::vector<Complex> direct;  // eigenvalues of U_theta
    int signed_padding = 0;       // m - n
    double max_distance = 0.0;
};

struct IharaEvaluation {
    Complex edge_matrix_form;                 // det(I - u U^+)
    std::optional<Complex> vertex_determinant;  // regular only: (1-u^2)^{m-n} det(I - uA + q u^2 I)
    std::optional<Complex> vertex_product;      // regular only: (1-u^2)^{m-n} prod(1 - lambda u + q u^2)
};

// det(I - u U_theta).
Complex zeta_reciprocal(const OperatorBundle& bundle, Complex u);
Complex zeta_reciprocal(const MixedGraph& graph, Complex u);

ReducedForms zeta_reciprocal_reduced(const MixedGraph& graph, const OperatorBundle& bundle, Complex u);

// Both reduced forms against each other (tolerance / 10) and against the
// direct determinant (tolerance), scaled by (1 + magnitude).
DeterminantCheck check_determinant_identity(const MixedGraph& graph, const OperatorBundle& bundle, Complex u,
                                            double tolerance = kDefaultTolerance);

// Regular graphs: (1-u^2)^{m-n} prod_j (u^2 - 2 lambda_j/(q+1) u + 1) over Spec(H_theta).
Complex regular_product_form(const MixedGraph& graph, const OperatorBundle& bundle, Complex u);

// Untwisted Grover zeta through the random-walk matrix:
// (1-u^2)^{m-n} det((1+u^2) I - 2u T).
Complex grover_zeta_reciprocal_via_walk(const MixedGraph& graph, const OperatorBundle& bundle, Complex u);

// Regular graphs: (1-u^2)^{m-n} prod_j (u^2 - 2 lambda_j/(q+1) u + 1) over Spec(A).
Complex grover_zeta_regular_product(const MixedGraph& graph, const OperatorBundle& bundle, Complex u);

// det(I - u U^+) for an undirected md2 connected graph; for regular graphs
// the determinant and product forms of Ihara's formula are evaluated too and
// must agree with it within tolerance (relative), else IdentityViolation.
IharaEvaluation ihara_reciprocal(const MixedGraph& graph, Complex u, double tolerance = 1e-8);

// Spectrum of U_theta predicted from Spec(H_tilde), matched against the
// direct spectrum. Throws IdentityViolation above tolerance.
SpectralMapping spectrum_via_mapping(const MixedGraph& graph, const OperatorBundle& bundle, double tolerance = 1e-7);

// N_k = Tr[(U_theta^t)^k] for k = 1..order.
ZetaSeries series_coefficients(const OperatorBundle& bundle, int order);

// exp(sum_k N_k u^k / k); refuses |u| >= 0.98.
Complex zeta_from_series(const ZetaSeries& series, Complex u);

// Poles of Z_theta for a connected regular graph from Spec(H_theta), merged
// with the +-1 poles of multiplicity m - n. Checks that poles from
// |lambda| < q+1 lie on the unit circle (unit_tolerance) and that
// det(I - u U_theta) vanishes at each pole (det_tolerance).
PoleSet poles_regular(const MixedGraph& graph, const OperatorBundle& bundle, double unit_tolerance = 1e-9,
                      double det_tolerance = 1e-6);

}  // namespace gzeta
