#include "gzeta/linalg.hpp"

#include "gzeta/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gzeta::linalg {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw InputError(std::string(what) + ": matrix must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    }
}

}  // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) throw InputError(std::string(what) + ": matrix has non-finite entries");
}

Complex determinant(const ComplexMatrix& m) {
    require_square(m, "determinant");
    require_finite(m, "determinant");
    if (m.rows() == 0) return 1.0;
    return m.partialPivLu().determinant();
}

SpectrumResult eigenvalues(const ComplexMatrix& m, bool hermitian) {
    require_square(m, "eigenvalues");
    require_finite(m, "eigenvalues");
    SpectrumResult result;
    result.hermitian = hermitian;
    if (m.rows() == 0) return result;

    if (hermitian) {
        if (hermitian_defect(m) > 1e-10) throw InputError("eigenvalues: hermitian flag set on non-Hermitian input");
        ComplexMatrix sym = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw ConvergenceError("Hermitian eigensolver did not converge (dimension " +
                                   std::to_string(m.rows()) + ")");
        }
        const auto& values = solver.eigenvalues();
        result.eigenvalues.reserve(static_cast<std::size_t>(values.size()));
        for (Eigen::Index i = 0; i < values.size(); ++i) result.eigenvalues.emplace_back(values[i], 0.0);
        return result;
    }

    Eigen::ComplexEigenSolver<ComplexMatrix> solver;
    solver.setMaxIterations(60 * static_cast<Eigen::Index>(m.rows()));
    solver.compute(m, false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("complex eigensolver did not converge within " +
                               std::to_string(60 * m.rows()) + " iterations");
    }
    const auto& values = solver.eigenvalues();
    result.eigenvalues.assign(values.data(), values.data() + values.size());
    return result;
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("symmetric_eigenvalues: matrix must be square");
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver did not converge");
    const auto& values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

Complex trace_power(const ComplexMatrix& m, int k) {
    if (k < 1) throw InputError("trace_power: k must be >= 1");
    return trace_powers(m, k).back();
}

std::vector<Complex> trace_powers(const ComplexMatrix& m, int max_k) {
    require_square(m, "trace_power");
    std::vector<Complex> traces;
    traces.reserve(static_cast<std::size_t>(std::max(max_k, 0)));
    ComplexMatrix power = m;
    for (int k = 1; k <= max_k; ++k) {
        if (k > 1) power = power * m;
        traces.push_back(power.trace());
    }
    return traces;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermitian_defect(const ComplexMatrix& m) { return max_abs_diff(m, m.adjoint()); }

ComplexMatrix transpose(const ComplexMatrix& m) { return m.transpose(); }

MatchResult match_multisets(std::span<const Complex> a, std::span<const Complex> b) {
    MatchResult result;
    if (a.size() != b.size()) {
        result.max_distance = std::numeric_limits<double>::infinity();
        result.total_distance = std::numeric_limits<double>::infinity();
        return result;
    }
    const std::size_t n = a.size();
    if (n == 0) return result;

    // Potentials formulation of the Hungarian method, 1-based rows/columns.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    auto cost = [&](std::size_t i, std::size_t j) { return std::abs(a[i - 1] - b[j - 1]); };
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            std::size_t i0 = p[j0];
            std::size_t j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    result.assignment.assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j) result.assignment[p[j] - 1] = static_cast<int>(j - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::abs(a[i] - b[static_cast<std::size_t>(result.assignment[i])]);
        result.total_distance += d;
        result.max_distance = std::max(result.max_distance, d);
    }
    return result;
}

std::vector<Complex> sorted(std::vector<Complex> values) {
    std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return values;
}

double scaled_error(Complex a, Complex b) {
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

bool approx_equal(Complex a, Complex b, double tol) { return scaled_error(a, b) <= tol; }

Complex ipow(Complex z, int k) {
    Complex result = 1.0;
    Complex base = k < 0 ? Complex(1.0) / z : z;
    for (int e = k < 0 ? -k : k; e > 0; --e) result *= base;
    return result;
}

}  // namespace gzeta::linalg
