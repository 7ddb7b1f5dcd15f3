#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace gzeta {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

// Absolute tolerance, scaled by (1 + magnitude) at each comparison site.
inline constexpr double kDefaultTolerance = 1e-9;

struct SpectrumResult {
    std::vector<Complex> eigenvalues;
    bool hermitian = false;
};

struct MatchResult {
    double max_distance = 0.0;
    double total_distance = 0.0;
    std::vector<int> assignment;  // assignment[i] = index in second multiset matched to i
};

namespace linalg {

// Throws InputError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

// Pivoted LU determinant; exactly 1 for the identity.
Complex determinant(const ComplexMatrix& m);

// Full eigenvalue multiset. With hermitian set, m must satisfy
// ||m - m*||_max <= 1e-10; the result is real and sorted ascending.
SpectrumResult eigenvalues(const ComplexMatrix& m, bool hermitian);

// Ascending eigenvalues of a real symmetric matrix.
std::vector<double> symmetric_eigenvalues(const RealMatrix& m);

// Tr(m^k) by repeated multiplication, k >= 1.
Complex trace_power(const ComplexMatrix& m, int k);

// Tr(m^1), ..., Tr(m^max_k).
std::vector<Complex> trace_powers(const ComplexMatrix& m, int max_k);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
double hermitian_defect(const ComplexMatrix& m);

// Entrywise transpose without conjugation.
ComplexMatrix transpose(const ComplexMatrix& m);

// Minimum-weight perfect matching on |a_i - b_j| (Hungarian method).
MatchResult match_multisets(std::span<const Complex> a, std::span<const Complex> b);

// Sorted by (re, im).
std::vector<Complex> sorted(std::vector<Complex> values);

// |a - b| <= tol * (1 + max(|a|, |b|)).
bool approx_equal(Complex a, Complex b, double tol = kDefaultTolerance);

// |a - b| / (1 + max(|a|, |b|)).
double scaled_error(Complex a, Complex b);

// Integer power by repeated multiplication; negative exponents invert.
Complex ipow(Complex z, int k);

}  // namespace linalg
}  // namespace gzeta
