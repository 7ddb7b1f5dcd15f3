#pragma once

#include "gzeta/graph.hpp"
#include "gzeta/linalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gzeta {

// Every matrix attached to a mixed graph. Rows/columns over arcs follow arc-id
// order; rows/columns over vertices follow vertex ids.
struct OperatorBundle {
    ComplexMatrix A;        // adjacency of the underlying graph
    ComplexMatrix D;        // degree diagonal
    ComplexMatrix T;        // simple random walk, D^-1 A
    ComplexMatrix K;        // n x 2m, K(t(e), e) = 1/sqrt(deg t(e))
    ComplexMatrix C;        // coin, 2 K* K - I
    ComplexMatrix S_theta;  // phase-twisted arc reversal
    ComplexMatrix U_theta;  // twisted Grover matrix, S_theta C
    ComplexMatrix H_theta;  // generalized Hermitian adjacency
    ComplexMatrix H_tilde;  // D^-1/2 H_theta D^-1/2
};

struct BuildOptions {
    // Rebuild U_theta from its closed-form entry table and require entrywise
    // agreement with S_theta C; throws IdentityViolation otherwise.
    bool verify_closed_form = true;
    double closed_form_tolerance = 1e-12;
};

// Throws InputError for isolated vertices.
OperatorBundle build_bundle(const MixedGraph& graph, const BuildOptions& options = {});

// (U_theta)_{ef} = e^{-i theta(e)} (2/deg t(f) - [f = e^-1]) when t(f) = o(e).
ComplexMatrix twisted_grover_closed_form(const MixedGraph& graph);

// Untwisted Grover matrix from its own entry table (ignores phases).
ComplexMatrix grover_matrix(const MixedGraph& graph);

// Entrywise indicator of entries > 1e-10. Throws InputError if any entry has
// an imaginary part above 1e-12.
ComplexMatrix positive_support(const ComplexMatrix& m);

// B - J0 built from arc incidences, checked against positive_support(U^t).
// Requires an all-undirected graph with minimum degree >= 2.
ComplexMatrix ihara_edge_matrix(const MixedGraph& graph);

struct IdentityCheck {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed() const { return deviation <= tolerance; }
};

// KK* = I, C^2 = I, C real symmetric, S unitary, S^2 = I, U unitary,
// U closed form, H Hermitian, H_tilde = K S K*. A positive tolerance_override
// replaces every per-check default.
std::vector<IdentityCheck> verify_bundle(const MixedGraph& graph, const OperatorBundle& bundle,
                                         double tolerance_override = 0.0);

// Max |eigenvalue of H_theta| against q+1 for regular graphs; deviation is
// max(0, max|lambda| - (q+1)).
IdentityCheck verify_hermitian_bound(const MixedGraph& graph, const OperatorBundle& bundle, double tolerance = 1e-8);

// Lookup by name: A, D, T, K, C, S, U, H, Htilde, B (edge matrix), Grover.
ComplexMatrix named_matrix(const MixedGraph& graph, const OperatorBundle& bundle, std::string_view name);

}  // namespace gzeta
