#include "gzeta/cycles.hpp"
#include "gzeta/experiments.hpp"
#include "gzeta/graph.hpp"
#include "gzeta/linalg.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/zeta.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

using namespace gzeta;

namespace {

MixedGraph negate_phases(const MixedGraph& g) {
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.phase = -e.phase;
    return MixedGraph(g.vertex_count(), edges);
}

MixedGraph relabel(const MixedGraph& g, const std::vector<int>& perm) {
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) {
        e.u = perm[e.u];
        e.v = perm[e.v];
    }
    return MixedGraph(g.vertex_count(), edges);
}

// Reversing a directed edge and negating its phase is the same mixed graph.
MixedGraph flip_designations(const MixedGraph& g) {
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) {
        if (e.kind != EdgeKind::Directed) continue;
        std::swap(e.u, e.v);
        e.phase = -e.phase;
    }
    return MixedGraph(g.vertex_count(), edges);
}

Complex random_u(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::polar(0.9 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
}

constexpr int kCases = 40;

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("serialization roundtrip") {
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(101, i);
        std::string text = serialize(g);
        CHECK(serialize(parse_mixed_graph(text)) == text);
    }
}

TEST_CASE("negating phases conjugates the reciprocal") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(202, i);
        OperatorBundle b = build_bundle(g);
        OperatorBundle nb = build_bundle(negate_phases(g));
        Complex u = random_u(rng);
        CHECK(oracle::scaled(zeta_reciprocal(nb, std::conj(u)), std::conj(zeta_reciprocal(b, u))) < 1e-10);
    }
}

TEST_CASE("relabeling vertices leaves the zeta unchanged") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(303, i);
        std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        MixedGraph h = relabel(g, perm);
        Complex u = random_u(rng);
        CHECK(oracle::scaled(zeta_reciprocal(build_bundle(h), u), zeta_reciprocal(build_bundle(g), u)) < 1e-10);
    }
}

TEST_CASE("designated orientation is a convention") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(404, i);
        OperatorBundle a = build_bundle(g);
        OperatorBundle b = build_bundle(flip_designations(g));
        CHECK(linalg::max_abs_diff(a.H_theta, b.H_theta) < 1e-14);
        Complex u = random_u(rng);
        CHECK(oracle::scaled(zeta_reciprocal(a, u), zeta_reciprocal(b, u)) < 1e-10);
    }
}

TEST_CASE("U_theta spectrum lies on the unit circle and H_theta is bounded by the max degree") {
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(505, i);
        OperatorBundle b = build_bundle(g);
        for (Complex z : linalg::eigenvalues(b.U_theta, false).eigenvalues) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
        int dmax = *std::max_element(g.degrees().begin(), g.degrees().end());
        for (Complex z : linalg::eigenvalues(b.H_theta, true).eigenvalues) {
            CHECK(std::abs(z.imag()) < 1e-12);
            CHECK(std::abs(z.real()) <= dmax + 1e-9);
        }
        for (Complex z : linalg::eigenvalues(b.H_tilde, true).eigenvalues) CHECK(std::abs(z.real()) <= 1.0 + 1e-9);
    }
}

TEST_CASE("determinant identity matches the oracle determinant") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(606, i);
        OperatorBundle b = build_bundle(g);
        Complex u = random_u(rng);
        oracle::Matrix m = oracle::grover_from_table(g);
        for (auto& row : m)
            for (auto& x : row) x *= -u;
        for (int k = 0; k < g.arc_count(); ++k) m[k][k] += 1.0;
        DeterminantCheck c = check_determinant_identity(g, b, u);
        CHECK(c.passed);
        CHECK(oracle::scaled(c.reduced.normalized, oracle::determinant(m)) < 1e-9);
    }
}

TEST_CASE("N_1 vanishes and negating phases conjugates N_k") {
    for (int i = 0; i < kCases; ++i) {
        MixedGraph g = random_fuzz_graph(707, i);
        ZetaSeries s = series_coefficients(build_bundle(g), 6);
        CHECK(std::abs(s.n(1)) < 1e-12);
        ZetaSeries neg = series_coefficients(build_bundle(negate_phases(g)), 6);
        for (int k = 1; k <= 6; ++k) CHECK(std::abs(neg.n(k) - std::conj(s.n(k))) < 1e-10);
    }
}

TEST_CASE("prime classes are canonical and primitive") {
    for (int i = 0; i < 15; ++i) {
        MixedGraph g = random_fuzz_graph(808, i);
        for (const PrimeCycleClass& c : enumerate_prime_classes(g, 5, false)) {
            CHECK(is_primitive(c.canonical_arcs));
            CHECK(canonical_rotation(c.canonical_arcs) == c.canonical_arcs);
            CHECK(is_closed(g, c.canonical_arcs));
        }
    }
}

}  // TEST_SUITE
