#pragma once

#include "gzeta/cycles.hpp"
#include "gzeta/graph.hpp"
#include "gzeta/linalg.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/zeta.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gzeta {

// Even, 2pi-periodic test function: either a cosine polynomial
// h(t) = sum_k a_k cos(k t), or a sampled callable on [0, 2pi).
class TestFunction {
public:
    static TestFunction cosine_polynomial(std::vector<Complex> coefficients);
    static TestFunction sampled(std::function<Complex(double)> h, int nodes);

    bool is_polynomial() const { return !sampler_; }
    // Highest cosine degree M; only defined for polynomials.
    int degree() const;
    int nodes() const { return nodes_; }
    const std::vector<Complex>& coefficients() const { return coefficients_; }

    // Polynomials accept complex angles; sampled functions need real ones.
    Complex operator()(Complex theta) const;

private:
    std::vector<Complex> coefficients_;
    std::function<Complex(double)> sampler_;
    int nodes_ = 0;
};

// hat h(k) = (1/2pi) int_0^{2pi} h(t) e^{i k t} dt. Exact for polynomials;
// trapezoid rule for sampled functions (needs nodes >= 4(k+1)).
Complex fourier_coeff(const TestFunction& h, int k);

struct SpectralAngle {
    Complex theta;
    double eigenvalue = 0.0;
    bool tempered = true;
};

struct AngleSet {
    std::vector<SpectralAngle> angles;
};

// theta_j = arccos(lambda_j / (q+1)) in [0, pi] for lambda_j in Spec(H_theta).
AngleSet grover_angles(const MixedGraph& graph, const OperatorBundle& bundle);

// Same map applied to Spec(A) of the underlying graph.
AngleSet grover_angles_untwisted(const MixedGraph& graph, const OperatorBundle& bundle);

// Angles of the roots q^{-1/2} e^{i theta} of 1 - lambda u + q u^2 over Spec(A).
// Untempered eigenvalues (|lambda| > 2 sqrt q) get complex angles built from
// the root of smaller modulus. Requires q >= 2.
AngleSet ihara_angles(const MixedGraph& graph, const OperatorBundle& bundle);

// n hat h(0) + sum_{p=1}^{M} hat h(p) [N_p - (m-n)(1 + (-1)^p)].
Complex oracle_spectral_sum(const MixedGraph& graph, const ZetaSeries& series, const TestFunction& h);
Complex oracle_spectral_sum(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h);

enum class TraceTheorem { Twisted, Untwisted, Ahumada };

struct TraceFormulaReport {
    TraceTheorem theorem = TraceTheorem::Twisted;
    Complex lhs;                      // sum of h over the printed angle set
    std::optional<Complex> lhs_all;   // Ahumada: every angle including untempered ones
    Complex identity_term;
    Complex cycle_term;
    Complex rhs_printed;                // identity_term + cycle_term
    Complex oracle_value;
    Complex residual_printed;           // rhs_printed - lhs
    Complex residual_oracle;          // oracle_value - lhs (lhs_all for Ahumada)
    int truncation_length = 0;
    double truncation_bound = 0.0;
    int classes_used = 0;
};

// Twisted Grover trace formula on a connected (q+1)-regular graph with q > 1.
// residual_oracle must be within oracle_tolerance (IdentityViolation);
// residual_printed is reported only.
TraceFormulaReport evaluate_twisted_trace(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h,
                                      int max_length, double oracle_tolerance = 1e-8);

// Untwisted case on an all-undirected graph: angles from Spec(A), weights
// from the untwisted table.
TraceFormulaReport evaluate_untwisted_trace(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h,
                                     int max_length, double oracle_tolerance = 1e-8);

// Ahumada's formula over reduced prime classes; nothing asserted.
TraceFormulaReport evaluate_ahumada(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h,
                                    int max_length, int quadrature_nodes = 2048);

// (2nq(q+1)/pi) int_0^pi sin^2 t / ((q+1)^2 - 4q cos^2 t) h(t) dt by the
// periodic trapezoid rule.
Complex ahumada_identity_term(int n, int q, const TestFunction& h, int nodes = 2048);

// Laurent coefficients at u^{-1}, u^0, ..., u^{order} of both sides of
//   -sum_j d/du log((1/u)(u - u_j)(u - 1/u_j))
//     = n(q u^2 - 1)/(u(u-1)(u+1)) + sum_k N_k u^{k-1}.
struct LogDerivativeSeriesCheck {
    std::vector<Complex> angle_side;
    std::vector<Complex> rational_side;
    std::vector<Complex> cycle_side;
    double max_deviation = 0.0;
};

// series must hold N_1..N_{order+1}.
LogDerivativeSeriesCheck check_log_derivative_series(const MixedGraph& graph, const OperatorBundle& bundle,
                                                     const ZetaSeries& series, int order = 10);

std::string to_string(TraceTheorem theorem);

}  // namespace gzeta
