#include "gzeta/operators.hpp"

#include "gzeta/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gzeta {

namespace {

using linalg::max_abs_diff;

Complex phase_factor(double theta) { return std::polar(1.0, theta); }

void require_no_isolated(const MixedGraph& graph) {
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (graph.degree(v) == 0) {
            throw InputError("vertex " + std::to_string(v) + " is isolated; degree-normalized operators need deg >= 1");
        }
    }
}

}  // namespace

ComplexMatrix twisted_grover_closed_form(const MixedGraph& graph) {
    require_no_isolated(graph);
    const int arcs = graph.arc_count();
    ComplexMatrix u = ComplexMatrix::Zero(arcs, arcs);
    for (const Arc& e : graph.arcs()) {
        Complex twist = phase_factor(-e.theta);
        // f ranges over arcs with t(f) = o(e), i.e. inverses of arcs leaving o(e).
        for (int g : graph.out_arcs(e.origin)) {
            int f = MixedGraph::inverse(g);
            double coin = 2.0 / graph.degree(graph.arc(f).terminus) - (f == e.inverse ? 1.0 : 0.0);
            u(e.id, f) = twist * coin;
        }
    }
    return u;
}

ComplexMatrix grover_matrix(const MixedGraph& graph) {
    require_no_isolated(graph);
    const int arcs = graph.arc_count();
    ComplexMatrix u = ComplexMatrix::Zero(arcs, arcs);
    for (const Arc& e : graph.arcs()) {
        for (const Arc& f : graph.arcs()) {
            if (f.terminus != e.origin) continue;
            double d = graph.degree(f.terminus);
            u(e.id, f.id) = f.id == e.inverse ? 2.0 / d - 1.0 : 2.0 / d;
        }
    }
    return u;
}

OperatorBundle build_bundle(const MixedGraph& graph, const BuildOptions& options) {
    require_no_isolated(graph);
    const int n = graph.vertex_count();
    const int arcs = graph.arc_count();
    OperatorBundle b;

    b.A = ComplexMatrix::Zero(n, n);
    b.D = ComplexMatrix::Zero(n, n);
    b.T = ComplexMatrix::Zero(n, n);
    for (const Arc& a : graph.arcs()) {
        b.A(a.origin, a.terminus) = 1.0;
        b.T(a.origin, a.terminus) = 1.0 / graph.degree(a.origin);
    }
    for (int v = 0; v < n; ++v) b.D(v, v) = static_cast<double>(graph.degree(v));

    b.K = ComplexMatrix::Zero(n, arcs);
    for (const Arc& a : graph.arcs()) b.K(a.terminus, a.id) = 1.0 / std::sqrt(static_cast<double>(graph.degree(a.terminus)));
    b.C = 2.0 * b.K.adjoint() * b.K - ComplexMatrix::Identity(arcs, arcs);

    b.S_theta = ComplexMatrix::Zero(arcs, arcs);
    for (const Arc& e : graph.arcs()) b.S_theta(e.id, e.inverse) = phase_factor(graph.arc(e.inverse).theta);
    b.U_theta = b.S_theta * b.C;

    // Case table over A(G): undirected edges give 1, a directed edge u->v
    // gives e^{i theta(u,v)} at (u,v) and its conjugate at (v,u).
    b.H_theta = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < graph.edge_count(); ++j) {
        const Arc& forward = graph.arc(2 * j);
        const Arc& backward = graph.arc(2 * j + 1);
        if (forward.designated && backward.designated) {
            b.H_theta(forward.origin, forward.terminus) = 1.0;
            b.H_theta(forward.terminus, forward.origin) = 1.0;
        } else {
            const Arc& head = forward.designated ? forward : backward;
            b.H_theta(head.origin, head.terminus) = phase_factor(head.theta);
            b.H_theta(head.terminus, head.origin) = phase_factor(-head.theta);
        }
    }
    Eigen::VectorXcd inv_sqrt(n);
    for (int v = 0; v < n; ++v) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(graph.degree(v)));
    b.H_tilde = inv_sqrt.asDiagonal() * b.H_theta * inv_sqrt.asDiagonal();

    if (options.verify_closed_form) {
        double dev = max_abs_diff(b.U_theta, twisted_grover_closed_form(graph));
        if (dev > options.closed_form_tolerance) {
            throw IdentityViolation("U_theta = S_theta C disagrees with its closed-form entry table by " +
                                    std::to_string(dev));
        }
    }
    return b;
}

ComplexMatrix positive_support(const ComplexMatrix& m) {
    if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 1e-12) {
        throw InputError("positive_support requires a real matrix");
    }
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j).real() > 1e-10) out(i, j) = 1.0;
        }
    }
    return out;
}

ComplexMatrix ihara_edge_matrix(const MixedGraph& graph) {
    if (!graph.all_undirected()) throw InputError("edge matrix is defined for undirected graphs");
    if (graph.min_degree() < 2) {
        throw InputError("edge matrix correspondence requires minimum degree >= 2 (md2); got " +
                         std::to_string(graph.min_degree()));
    }
    const int arcs = graph.arc_count();
    ComplexMatrix bj = ComplexMatrix::Zero(arcs, arcs);
    for (const Arc& e : graph.arcs()) {
        for (int f : graph.out_arcs(e.terminus)) {
            if (f != e.inverse) bj(e.id, f) = 1.0;
        }
    }
    ComplexMatrix support = positive_support(linalg::transpose(grover_matrix(graph)));
    if (max_abs_diff(bj, support) != 0.0) {
        throw IdentityViolation("B - J0 differs from the positive support of U^t");
    }
    return bj;
}

std::vector<IdentityCheck> verify_bundle(const MixedGraph& graph, const OperatorBundle& b, double tolerance_override) {
    const Eigen::Index n = b.A.rows();
    const Eigen::Index arcs = b.C.rows();
    const ComplexMatrix In = ComplexMatrix::Identity(n, n);
    const ComplexMatrix I2m = ComplexMatrix::Identity(arcs, arcs);
    auto tol = [&](double fallback) { return tolerance_override > 0.0 ? tolerance_override : fallback; };

    std::vector<IdentityCheck> checks;
    checks.push_back({"K K* = I_n", max_abs_diff(b.K * b.K.adjoint(), In), tol(1e-12)});
    checks.push_back({"C real symmetric",
                      std::max(linalg::max_abs(ComplexMatrix(b.C.imag().cast<Complex>())),
                               max_abs_diff(b.C, linalg::transpose(b.C))),
                      tol(1e-12)});
    checks.push_back({"C^2 = I", max_abs_diff(b.C * b.C, I2m), tol(1e-10)});
    checks.push_back({"S_theta unitary", max_abs_diff(b.S_theta * b.S_theta.adjoint(), I2m), tol(1e-12)});
    checks.push_back({"S_theta^2 = I", max_abs_diff(b.S_theta * b.S_theta, I2m), tol(1e-12)});
    checks.push_back({"U_theta unitary", max_abs_diff(b.U_theta * b.U_theta.adjoint(), I2m), tol(1e-10)});
    checks.push_back({"U_theta closed form", max_abs_diff(b.U_theta, twisted_grover_closed_form(graph)), tol(1e-12)});
    checks.push_back({"H_theta Hermitian", linalg::hermitian_defect(b.H_theta), tol(1e-12)});
    checks.push_back({"H_tilde = K S K*", max_abs_diff(b.H_tilde, b.K * b.S_theta * b.K.adjoint()), tol(1e-12)});
    return checks;
}

IdentityCheck verify_hermitian_bound(const MixedGraph& graph, const OperatorBundle& bundle, double tolerance) {
    auto d = graph.regular_degree();
    if (!d) throw InputError("eigenvalue bound check needs a regular graph");
    auto spec = linalg::eigenvalues(bundle.H_theta, true);
    double worst = 0.0;
    for (Complex z : spec.eigenvalues) worst = std::max(worst, std::abs(z));
    return {"|Spec(H_theta)| <= q+1", std::max(0.0, worst - *d), tolerance};
}

ComplexMatrix named_matrix(const MixedGraph& graph, const OperatorBundle& b, std::string_view name) {
    if (name == "A") return b.A;
    if (name == "D") return b.D;
    if (name == "T") return b.T;
    if (name == "K") return b.K;
    if (name == "C") return b.C;
    if (name == "S") return b.S_theta;
    if (name == "U") return b.U_theta;
    if (name == "H") return b.H_theta;
    if (name == "Htilde") return b.H_tilde;
    if (name == "B") return ihara_edge_matrix(graph);
    if (name == "Grover") return grover_matrix(graph);
    throw InputError("unknown matrix name '" + std::string(name) + "' (A, D, T, K, C, S, U, H, Htilde, B, Grover)");
}

}  // namespace gzeta
