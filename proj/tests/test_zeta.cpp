#include "gzeta/errors.hpp"
#include "gzeta/graph.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/zeta.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace gzeta;

namespace {

Complex random_u(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::polar(radius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
}

// det(I - uU) straight from the arc table and full-pivot elimination.
Complex oracle_reciprocal(const MixedGraph& g, Complex u) {
    oracle::Matrix m = oracle::grover_from_table(g);
    for (auto& row : m)
        for (auto& x : row) x *= -u;
    for (int i = 0; i < g.arc_count(); ++i) m[i][i] += 1.0;
    return oracle::determinant(m);
}

}  // namespace

TEST_SUITE("zeta") {

TEST_CASE("reciprocal at zero and on K2") {
    for (MixedGraph g : {complete_graph(2), cycle_graph(4), petersen_graph()}) {
        OperatorBundle b = build_bundle(g);
        CHECK(zeta_reciprocal(b, 0.0) == Complex(1.0));
        ReducedForms r = zeta_reciprocal_reduced(g, b, 0.0);
        CHECK(std::abs(r.normalized - 1.0) < 1e-14);
        CHECK(std::abs(r.degree_form - 1.0) < 1e-14);
    }
    MixedGraph k2 = complete_graph(2);
    OperatorBundle b = build_bundle(k2);
    for (Complex u : {Complex(0.3), Complex(-0.7, 0.2), Complex(0.0, 0.9)}) {
        CHECK(std::abs(zeta_reciprocal(b, u) - (1.0 - u * u)) < 1e-14);
        ReducedForms r = zeta_reciprocal_reduced(k2, b, u);
        CHECK(std::abs(r.normalized - (1.0 - u * u)) < 1e-14);
    }
}

TEST_CASE("C3 at one half") {
    MixedGraph c3 = cycle_graph(3);
    OperatorBundle b = build_bundle(c3);
    DeterminantCheck c = check_determinant_identity(c3, b, 0.5);
    CHECK(c.passed);
    CHECK(std::abs(c.direct - c.reduced.normalized) <= 1e-10);
    // Spec(H_tilde) = {1, -1/2, -1/2}: (u-1)^2 (u^2+u+1)^2 at m = n.
    Complex u = 0.5;
    CHECK(std::abs(c.direct - std::pow(u - 1.0, 2) * std::pow(u * u + u + 1.0, 2)) < 1e-14);
}

TEST_CASE("determinant identity on phased K4") {
    std::mt19937_64 rng(42);
    MixedGraph g(4, {{0, 1, EdgeKind::Directed, 0.9}, {0, 2}, {0, 3}, {1, 2}, {3, 1, EdgeKind::Directed, -2.1}, {2, 3}});
    OperatorBundle b = build_bundle(g);
    for (int i = 0; i < 20; ++i) {
        Complex u = random_u(rng, 0.9);
        DeterminantCheck c = check_determinant_identity(g, b, u);
        CHECK(c.passed);
        CHECK(oracle::scaled(c.direct, oracle_reciprocal(g, u)) < 1e-10);
    }
}

TEST_CASE("determinant identity on irregular and tree graphs") {
    std::mt19937_64 rng(8);
    std::vector<MixedGraph> corpus{path_graph(5), MixedGraph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {1, 2}})};
    corpus.push_back(orient_random(corpus[1], 0.6, PhaseMode::Uniform, 9));
    for (const MixedGraph& g : corpus) {
        OperatorBundle b = build_bundle(g);
        for (int i = 0; i < 5; ++i) {
            Complex u = random_u(rng, 0.9);
            CHECK(check_determinant_identity(g, b, u).passed);
        }
    }
}

TEST_CASE("regular product form") {
    std::mt19937_64 rng(1);
    MixedGraph g = orient_random(petersen_graph(), 0.5, PhaseMode::Uniform, 3);
    OperatorBundle b = build_bundle(g);
    for (int i = 0; i < 10; ++i) {
        Complex u = random_u(rng, 0.95);
        CHECK(oracle::scaled(regular_product_form(g, b, u), zeta_reciprocal(b, u)) < 1e-8);
    }
    CHECK_THROWS_AS(regular_product_form(path_graph(3), build_bundle(path_graph(3)), 0.2), InputError);
}

TEST_CASE("classical Grover zeta through T") {
    std::mt19937_64 rng(2);
    for (MixedGraph g : {complete_graph(4), MixedGraph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {1, 2}, {2, 4}})}) {
        OperatorBundle b = build_bundle(g);
        for (int i = 0; i < 5; ++i) {
            Complex u = random_u(rng, 0.9);
            CHECK(oracle::scaled(grover_zeta_reciprocal_via_walk(g, b, u), zeta_reciprocal(b, u)) < 1e-9);
        }
    }
    MixedGraph k4 = complete_graph(4);
    OperatorBundle b = build_bundle(k4);
    CHECK(oracle::scaled(grover_zeta_regular_product(k4, b, 0.4), zeta_reciprocal(b, 0.4)) < 1e-10);
}

TEST_CASE("Ihara reciprocal") {
    MixedGraph k4 = complete_graph(4);
    for (double u : {0.1, 0.2, 0.3}) {
        IharaEvaluation e = ihara_reciprocal(k4, u);
        CHECK(oracle::scaled(e.edge_matrix_form, oracle::k4_ihara(u)) < 1e-12);
        REQUIRE(e.vertex_determinant.has_value());
        CHECK(oracle::scaled(*e.vertex_determinant, oracle::k4_ihara(u)) < 1e-12);
        CHECK(oracle::scaled(*e.vertex_product, oracle::k4_ihara(u)) < 1e-12);
    }
    CHECK(ihara_reciprocal(k4, 0.0).edge_matrix_form == Complex(1.0));

    MixedGraph c5 = cycle_graph(5);
    for (Complex u : {Complex(0.3), Complex(0.5, 0.4)}) {
        CHECK(oracle::scaled(ihara_reciprocal(c5, u).edge_matrix_form, std::pow(1.0 - std::pow(u, 5), 2)) < 1e-12);
    }
    CHECK_THROWS_AS(ihara_reciprocal(path_graph(3), 0.2), InputError);
}

TEST_CASE("spectral mapping") {
    SUBCASE("C3") {
        MixedGraph c3 = cycle_graph(3);
        SpectralMapping s = spectrum_via_mapping(c3, build_bundle(c3));
        CHECK(s.signed_padding == 0);
        std::vector<Complex> expected{1.0, 1.0, std::polar(1.0, 2 * std::numbers::pi / 3),
                                      std::polar(1.0, 2 * std::numbers::pi / 3),
                                      std::polar(1.0, -2 * std::numbers::pi / 3),
                                      std::polar(1.0, -2 * std::numbers::pi / 3)};
        CHECK(linalg::match_multisets(s.mapped, expected).max_distance < 1e-12);
        CHECK(s.max_distance < 1e-7);
    }
    SUBCASE("phased K2 is a tree") {
        MixedGraph k2(2, {{0, 1, EdgeKind::Directed, 1.3}});
        SpectralMapping s = spectrum_via_mapping(k2, build_bundle(k2));
        CHECK(s.signed_padding == -1);
        CHECK(linalg::match_multisets(s.mapped, std::vector<Complex>{1.0, -1.0}).max_distance < 1e-12);
        CHECK(s.max_distance < 1e-12);
    }
    SUBCASE("random connected mixed graphs") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            MixedGraph g = orient_random(random_regular_graph(8, 3, seed), 0.7, PhaseMode::Uniform, seed);
            if (!g.connected()) continue;
            CHECK(spectrum_via_mapping(g, build_bundle(g)).max_distance < 1e-7);
        }
    }
    MixedGraph split(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(spectrum_via_mapping(split, build_bundle(split)), InputError);
}

TEST_CASE("series coefficients") {
    MixedGraph c3 = cycle_graph(3);
    ZetaSeries s = series_coefficients(build_bundle(c3), 3);
    CHECK(s.provenance == SeriesProvenance::Trace);
    CHECK(std::abs(s.n(1)) < 1e-15);
    CHECK(std::abs(s.n(2)) < 1e-15);
    CHECK(std::abs(s.n(3) - 6.0) < 1e-12);

    ZetaSeries k2 = series_coefficients(build_bundle(complete_graph(2)), 4);
    CHECK(k2.n(1) == Complex(0.0));
    CHECK(std::abs(k2.n(2) - 2.0) < 1e-15);

    MixedGraph g = orient_random(petersen_graph(), 0.4, PhaseMode::Uniform, 6);
    ZetaSeries p = series_coefficients(build_bundle(g), 5);
    CHECK(std::abs(p.n(1)) < 1e-14);

    // Untwisted coefficients are real.
    ZetaSeries real = series_coefficients(build_bundle(petersen_graph()), 10);
    for (Complex z : real.coefficients) CHECK(std::abs(z.imag()) < 1e-9);
    CHECK_THROWS_AS(series_coefficients(build_bundle(c3), 0), InputError);
}

TEST_CASE("series reproduces the determinant") {
    MixedGraph g = orient_random(complete_graph(4), 0.5, PhaseMode::Uniform, 12);
    OperatorBundle b = build_bundle(g);
    ZetaSeries s = series_coefficients(b, 10);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
        Complex u = random_u(rng, 0.3);
        Complex product = zeta_from_series(s, u) * zeta_reciprocal(b, u);
        CHECK(std::abs(product - 1.0) <= std::pow(std::abs(u), 11) * g.arc_count() * 3.0);
    }
    CHECK_THROWS_AS(zeta_from_series(s, 0.99), InputError);
}

TEST_CASE("poles of regular graphs") {
    SUBCASE("K4") {
        MixedGraph k4 = complete_graph(4);
        PoleSet p = poles_regular(k4, build_bundle(k4));
        CHECK(p.total_multiplicity() == 12);
        auto multiplicity_at = [&](Complex z) {
            int total = 0;
            for (const Pole& pole : p.poles)
                if (std::abs(pole.value - z) < 1e-7) total += pole.multiplicity;
            return total;
        };
        // lambda = 3 gives a double pole at 1, plus 1 from the m - n = 2 padding.
        CHECK(multiplicity_at(1.0) == 4);
        CHECK(multiplicity_at(-1.0) == 2);
        CHECK(multiplicity_at(Complex(-1.0, 2.0 * std::sqrt(2.0)) / 3.0) == 3);
        CHECK(multiplicity_at(Complex(-1.0, -2.0 * std::sqrt(2.0)) / 3.0) == 3);
    }
    SUBCASE("C3") {
        MixedGraph c3 = cycle_graph(3);
        PoleSet p = poles_regular(c3, build_bundle(c3));
        CHECK(p.total_multiplicity() == 6);
        int at_one = 0;
        for (const Pole& pole : p.poles)
            if (std::abs(pole.value - 1.0) < 1e-7) at_one += pole.multiplicity;
        CHECK(at_one == 2);
    }
    SUBCASE("phased Petersen") {
        MixedGraph g = orient_random(petersen_graph(), 1.0, PhaseMode::Uniform, 7);
        PoleSet p = poles_regular(g, build_bundle(g));
        CHECK(p.total_multiplicity() == 30);
        for (const Pole& pole : p.poles) CHECK(std::abs(std::abs(pole.value) - 1.0) < 1e-9);
    }
    CHECK_THROWS_AS(poles_regular(path_graph(4), build_bundle(path_graph(4))), InputError);
}

}  // TEST_SUITE
