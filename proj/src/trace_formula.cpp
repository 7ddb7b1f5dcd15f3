#include "gzeta/trace_formula.hpp"

#include "gzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gzeta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSnap = 1e-12;

struct RegularShape {
    int n;
    int m;
    int q;
};

RegularShape require_connected_regular(const MixedGraph& graph, const char* what) {
    if (!graph.connected()) throw InputError(std::string(what) + " requires a connected graph");
    auto d = graph.regular_degree();
    if (!d) throw InputError(std::string(what) + " requires a regular graph");
    return {graph.vertex_count(), graph.edge_count(), *d - 1};
}

void require_polynomial(const TestFunction& h, int max_length, const char* what) {
    if (!h.is_polynomial()) throw InputError(std::string(what) + " needs a cosine-polynomial test function");
    if (max_length < h.degree()) {
        throw InputError(std::string(what) + ": truncation length " + std::to_string(max_length) +
                         " is below the test-function degree " + std::to_string(h.degree()));
    }
}

// arccos on [-1, 1] with values within kSnap of the ends mapped exactly.
double snapped_arccos(double c) {
    if (c >= 1.0 - kSnap) return 0.0;
    if (c <= -1.0 + kSnap) return kPi;
    return std::acos(c);
}

AngleSet angles_from(const std::vector<double>& eigenvalues, double scale) {
    AngleSet set;
    for (double lambda : eigenvalues) set.angles.push_back({snapped_arccos(lambda / scale), lambda, true});
    return set;
}

std::vector<double> hermitian_spectrum(const ComplexMatrix& m) {
    std::vector<double> out;
    for (Complex z : linalg::eigenvalues(m, true).eigenvalues) out.push_back(z.real());
    return out;
}

Complex sum_over(const AngleSet& set, const TestFunction& h, bool tempered_only) {
    Complex total = 0.0;
    for (const SpectralAngle& a : set.angles) {
        if (!tempered_only || a.tempered) total += h(a.theta);
    }
    return total;
}

TraceFormulaReport evaluate_grover_formula(TraceTheorem theorem, const MixedGraph& graph,
                                           const OperatorBundle& bundle, const TestFunction& h, int max_length,
                                           double oracle_tolerance, const char* what) {
    const RegularShape shape = require_connected_regular(graph, what);
    if (shape.q <= 1) throw InputError(std::string(what) + " assumes q > 1; got q = " + std::to_string(shape.q));
    require_polynomial(h, max_length, what);

    const bool twisted = theorem == TraceTheorem::Twisted;
    const AngleSet angles = twisted ? grover_angles(graph, bundle) : grover_angles_untwisted(graph, bundle);
    const WeightKind kind = twisted ? WeightKind::Twisted : WeightKind::Untwisted;

    TraceFormulaReport report;
    report.theorem = theorem;
    report.truncation_length = max_length;
    report.lhs = sum_over(angles, h, false);
    // (1/pi) int_0^pi h = a_0 for a cosine polynomial.
    report.identity_term = 0.5 * shape.m * h.coefficients().front();

    Complex cycle_sum = 0.0;
    if (max_length >= 2) {
        auto classes = enumerate_prime_classes(graph, max_length, false, kind);
        report.classes_used = static_cast<int>(classes.size());
        for (const PrimeCycleClass& c : classes) {
            Complex power = 1.0;
            for (int p = c.length; p <= max_length; p += c.length) {
                power *= c.weight;
                cycle_sum += static_cast<double>(c.length) * power * fourier_coeff(h, p);
            }
        }
    }
    report.cycle_term = 0.5 * cycle_sum;
    report.rhs_printed = report.identity_term + report.cycle_term;
    report.residual_printed = report.rhs_printed - report.lhs;

    const ComplexMatrix walk = twisted ? bundle.U_theta : grover_matrix(graph);
    ZetaSeries series;
    series.coefficients = linalg::trace_powers(linalg::transpose(walk), std::max(h.degree(), 1));
    report.oracle_value = oracle_spectral_sum(graph, series, h);
    report.residual_oracle = report.oracle_value - report.lhs;
    report.truncation_bound = 0.0;  // hat h(k) vanishes beyond the degree <= max_length

    if (std::abs(report.residual_oracle) > oracle_tolerance * (1.0 + std::abs(report.lhs))) {
        throw IdentityViolation(std::string(what) + ": spectral sum differs from the trace oracle by " +
                                std::to_string(std::abs(report.residual_oracle)));
    }
    return report;
}

}  // namespace

TestFunction TestFunction::cosine_polynomial(std::vector<Complex> coefficients) {
    if (coefficients.empty()) throw InputError("cosine polynomial needs at least a_0");
    TestFunction h;
    h.coefficients_ = std::move(coefficients);
    return h;
}

TestFunction TestFunction::sampled(std::function<Complex(double)> fn, int nodes) {
    if (!fn) throw InputError("sampled test function needs a callable");
    if (nodes < 4) throw InputError("sampled test function needs at least 4 nodes");
    TestFunction h;
    h.sampler_ = std::move(fn);
    h.nodes_ = nodes;
    return h;
}

int TestFunction::degree() const {
    if (!is_polynomial()) throw InputError("degree is only defined for cosine polynomials");
    return static_cast<int>(coefficients_.size()) - 1;
}

Complex TestFunction::operator()(Complex theta) const {
    if (sampler_) {
        if (std::abs(theta.imag()) > 0.0) throw InputError("sampled test function needs a real angle");
        return sampler_(theta.real());
    }
    Complex value = 0.0;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        if (coefficients_[k] != Complex(0.0)) value += coefficients_[k] * std::cos(static_cast<double>(k) * theta);
    }
    return value;
}

Complex fourier_coeff(const TestFunction& h, int k) {
    if (k < 0) throw InputError("fourier_coeff: k must be >= 0");
    if (h.is_polynomial()) {
        const auto& a = h.coefficients();
        if (k >= static_cast<int>(a.size())) return 0.0;
        return k == 0 ? a[0] : 0.5 * a[static_cast<std::size_t>(k)];
    }
    if (h.nodes() < 4 * (k + 1)) {
        throw InputError("fourier_coeff: " + std::to_string(h.nodes()) + " nodes are too few for k = " +
                         std::to_string(k));
    }
    const int nodes = h.nodes();
    Complex sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double t = 2.0 * kPi * j / nodes;
        sum += h(t) * std::polar(1.0, k * t);
    }
    return sum / static_cast<double>(nodes);
}

AngleSet grover_angles(const MixedGraph& graph, const OperatorBundle& bundle) {
    const RegularShape shape = require_connected_regular(graph, "grover_angles");
    return angles_from(hermitian_spectrum(bundle.H_theta), shape.q + 1.0);
}

AngleSet grover_angles_untwisted(const MixedGraph& graph, const OperatorBundle& bundle) {
    const RegularShape shape = require_connected_regular(graph, "grover_angles");
    return angles_from(linalg::symmetric_eigenvalues(bundle.A.real()), shape.q + 1.0);
}

AngleSet ihara_angles(const MixedGraph& graph, const OperatorBundle& bundle) {
    const RegularShape shape = require_connected_regular(graph, "ihara_angles");
    if (shape.q < 2) throw InputError("ihara_angles requires q >= 2; got q = " + std::to_string(shape.q));
    const double q = shape.q;
    const double edge = 2.0 * std::sqrt(q);

    AngleSet set;
    for (double lambda : linalg::symmetric_eigenvalues(bundle.A.real())) {
        double c = lambda / edge;
        if (std::abs(c) <= 1.0 + kSnap) {
            set.angles.push_back({snapped_arccos(std::clamp(c, -1.0, 1.0)), lambda, true});
            continue;
        }
        // Real roots of 1 - lambda u + q u^2; keep the one nearer the origin.
        double disc = std::sqrt(lambda * lambda - 4.0 * q);
        double r1 = (lambda + disc) / (2.0 * q);
        double r2 = (lambda - disc) / (2.0 * q);
        double root = std::abs(r1) < std::abs(r2) ? r1 : r2;
        Complex theta = Complex(0.0, -1.0) * std::log(Complex(std::sqrt(q) * root));
        set.angles.push_back({theta, lambda, false});
    }
    return set;
}

Complex oracle_spectral_sum(const MixedGraph& graph, const ZetaSeries& series, const TestFunction& h) {
    if (!h.is_polynomial()) throw InputError("oracle_spectral_sum needs a cosine-polynomial test function");
    const int excess = graph.edge_count() - graph.vertex_count();
    Complex value = static_cast<double>(graph.vertex_count()) * fourier_coeff(h, 0);
    for (int p = 1; p <= h.degree(); ++p) {
        double padding = excess * (p % 2 == 0 ? 2.0 : 0.0);
        value += fourier_coeff(h, p) * (series.n(p) - padding);
    }
    return value;
}

Complex oracle_spectral_sum(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h) {
    require_connected_regular(graph, "oracle_spectral_sum");
    if (!h.is_polynomial()) throw InputError("oracle_spectral_sum needs a cosine-polynomial test function");
    return oracle_spectral_sum(graph, series_coefficients(bundle, std::max(h.degree(), 1)), h);
}

TraceFormulaReport evaluate_twisted_trace(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h,
                                      int max_length, double oracle_tolerance) {
    return evaluate_grover_formula(TraceTheorem::Twisted, graph, bundle, h, max_length, oracle_tolerance,
                                   "twisted trace formula");
}

TraceFormulaReport evaluate_untwisted_trace(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h,
                                     int max_length, double oracle_tolerance) {
    if (!graph.all_undirected()) throw InputError("untwisted trace formula requires an all-undirected graph");
    return evaluate_grover_formula(TraceTheorem::Untwisted, graph, bundle, h, max_length, oracle_tolerance,
                                   "untwisted trace formula");
}

Complex ahumada_identity_term(int n, int q, const TestFunction& h, int nodes) {
    if (q < 2) throw InputError("Ahumada kernel requires q >= 2");
    const double qd = q;
    Complex sum = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double t = 2.0 * kPi * j / nodes;
        double s = std::sin(t);
        double c = std::cos(t);
        sum += s * s / ((qd + 1.0) * (qd + 1.0) - 4.0 * qd * c * c) * h(t);
    }
    // int_0^pi of an even periodic integrand is half the full-period integral.
    return 2.0 * n * qd * (qd + 1.0) / nodes * sum;
}

TraceFormulaReport evaluate_ahumada(const MixedGraph& graph, const OperatorBundle& bundle, const TestFunction& h,
                                    int max_length, int quadrature_nodes) {
    const RegularShape shape = require_connected_regular(graph, "Ahumada trace formula");
    if (shape.q < 2) throw InputError("Ahumada trace formula requires q >= 2");
    require_polynomial(h, max_length, "Ahumada trace formula");
    const double q = shape.q;

    TraceFormulaReport report;
    report.theorem = TraceTheorem::Ahumada;
    report.truncation_length = max_length;
    const AngleSet angles = ihara_angles(graph, bundle);
    report.lhs = sum_over(angles, h, true);
    report.lhs_all = sum_over(angles, h, false);
    report.identity_term = ahumada_identity_term(shape.n, shape.q, h, quadrature_nodes);

    Complex cycle_sum = 0.0;
    if (max_length >= 2) {
        auto classes = enumerate_prime_classes(graph, max_length, true, WeightKind::Untwisted);
        report.classes_used = static_cast<int>(classes.size());
        for (const PrimeCycleClass& c : classes) {
            for (int p = c.length; p <= max_length; p += c.length) {
                cycle_sum += static_cast<double>(c.length) * std::pow(q, -0.5 * p) * fourier_coeff(h, p);
            }
        }
    }
    report.cycle_term = cycle_sum;
    report.rhs_printed = report.identity_term + report.cycle_term;
    report.residual_printed = report.rhs_printed - report.lhs;

    // Non-backtracking traces give sum_j cos(p theta_j) over all n angles.
    const auto traces =
        linalg::trace_powers(ihara_edge_matrix(graph), std::max(h.degree(), 1));
    const int excess = shape.m - shape.n;
    Complex oracle = static_cast<double>(shape.n) * fourier_coeff(h, 0);
    for (int p = 1; p <= h.degree(); ++p) {
        double padding = excess * (p % 2 == 0 ? 2.0 : 0.0);
        oracle += fourier_coeff(h, p) * std::pow(q, -0.5 * p) * (traces[static_cast<std::size_t>(p - 1)] - padding);
    }
    report.oracle_value = oracle;
    report.residual_oracle = oracle - *report.lhs_all;
    return report;
}

LogDerivativeSeriesCheck check_log_derivative_series(const MixedGraph& graph, const OperatorBundle& bundle,
                                                     const ZetaSeries& series, int order) {
    const RegularShape shape = require_connected_regular(graph, "log-derivative series check");
    if (order < 0) throw InputError("series order must be >= 0");
    if (series.order() < order + 1) {
        throw InputError("log-derivative series check needs N_1..N_" + std::to_string(order + 1));
    }
    const std::size_t len = static_cast<std::size_t>(order) + 2;  // u^{-1} .. u^{order}
    LogDerivativeSeriesCheck check;
    check.angle_side.assign(len, Complex(0.0));
    check.rational_side.assign(len, Complex(0.0));
    check.cycle_side.assign(len, Complex(0.0));

    // -d/du log((1/u)(u - z)(u - 1/z)) = 1/u + sum_{k>=0} (z^{k+1} + z^{-(k+1)}) u^k for |z| = 1.
    for (const SpectralAngle& a : grover_angles(graph, bundle).angles) {
        const Complex z = std::exp(Complex(0.0, 1.0) * a.theta);
        check.angle_side[0] += 1.0;
        Complex zk = z;
        for (std::size_t k = 1; k < len; ++k) {
            check.angle_side[k] += zk + 1.0 / zk;
            zk *= z;
        }
    }

    // n(q u^2 - 1) / (u^2 - 1) by power-series division, then shifted by 1/u.
    const double n = shape.n;
    const double numerator[3] = {-n, 0.0, n * shape.q};
    const double denominator[3] = {-1.0, 0.0, 1.0};
    std::vector<double> quotient(len, 0.0);
    for (std::size_t k = 0; k < len; ++k) {
        double acc = k < 3 ? numerator[k] : 0.0;
        for (std::size_t i = 1; i <= std::min<std::size_t>(k, 2); ++i) acc -= denominator[i] * quotient[k - i];
        quotient[k] = acc / denominator[0];
    }
    for (std::size_t k = 0; k < len; ++k) check.rational_side[k] = quotient[k];

    // sum_k N_k u^{k-1}: index 1 + j holds the coefficient of u^j.
    for (std::size_t k = 1; k < len; ++k) check.cycle_side[k] = series.n(static_cast<int>(k));

    for (std::size_t k = 0; k < len; ++k) {
        double dev = std::abs(check.angle_side[k] - check.rational_side[k] - check.cycle_side[k]);
        check.max_deviation = std::max(check.max_deviation, dev);
    }
    return check;
}

std::string to_string(TraceTheorem theorem) {
    switch (theorem) {
        case TraceTheorem::Twisted: return "twisted";
        case TraceTheorem::Untwisted: return "untwisted";
        case TraceTheorem::Ahumada: return "ahumada";
    }
    return "unknown";
}

}  // namespace gzeta
