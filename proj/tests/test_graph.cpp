#include "gzeta/cycles.hpp"
#include "gzeta/errors.hpp"
#include "gzeta/graph.hpp"
#include "gzeta/operators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <numeric>

using namespace gzeta;

namespace {

void check_arc_invariants(const MixedGraph& g) {
    CHECK(g.arc_count() == 2 * g.edge_count());
    CHECK(std::accumulate(g.degrees().begin(), g.degrees().end(), 0) == 2 * g.edge_count());
    for (const Arc& a : g.arcs()) {
        CHECK(a.inverse != a.id);
        CHECK(g.arc(a.inverse).inverse == a.id);
        CHECK(g.arc(a.inverse).origin == a.terminus);
        CHECK(g.arc(a.inverse).theta == -a.theta);
    }
}

}  // namespace

TEST_SUITE("graph-core") {

TEST_CASE("parse a single undirected edge") {
    MixedGraph g = parse_mixed_graph("mixedgraph 2 1\n0 1 undirected\n");
    CHECK(g.vertex_count() == 2);
    REQUIRE(g.arc_count() == 2);
    CHECK(g.arc(0).origin == 0);
    CHECK(g.arc(0).terminus == 1);
    CHECK(g.arc(1).origin == 1);
    CHECK(g.arc(1).terminus == 0);
    CHECK(g.arc(0).theta == 0.0);
    CHECK(g.arc(1).theta == 0.0);
    CHECK(g.arc(0).designated);
    CHECK(g.arc(1).designated);
}

TEST_CASE("parse a triangle with one phased arc") {
    MixedGraph g = parse_mixed_graph(
        "mixedgraph 3 3\n0 1 undirected\n1 2 undirected\n0 2 directed 1.0471975511965976\n");
    check_arc_invariants(g);
    const Edge& e = g.edges()[1];  // sorted: (0,1), (0,2), (1,2)
    CHECK(e.u == 0);
    CHECK(e.v == 2);
    CHECK(e.kind == EdgeKind::Directed);
    const Arc& fwd = g.arc(2);
    const Arc& back = g.arc(3);
    CHECK(fwd.origin == 0);
    CHECK(fwd.terminus == 2);
    CHECK(fwd.theta == doctest::Approx(std::numbers::pi / 3).epsilon(1e-15));
    CHECK(back.theta == doctest::Approx(-std::numbers::pi / 3).epsilon(1e-15));
    CHECK(fwd.designated);
    CHECK_FALSE(back.designated);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 2 1\n0 0 undirected\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 3 2\n0 1 undirected\n1 0 directed 0.5\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 2 1\n0 2 undirected\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 2 1\n0 1 undirected 0.3\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 2 1\n0 1 sideways\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 3 2\n0 1 undirected\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("0 1 undirected\n"), InputError);
    CHECK_THROWS_AS(parse_mixed_graph("mixedgraph 2 1\n0 1 directed nan\n"), InputError);

    try {
        parse_mixed_graph("# header comment\nmixedgraph 3 2\n0 1 undirected\n1 1 undirected\n");
        FAIL("loop accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("disconnected graphs are accepted and flagged") {
    MixedGraph g = parse_mixed_graph("mixedgraph 4 2\n0 1 undirected\n2 3 undirected\n");
    CHECK_FALSE(g.connected());
    CHECK_FALSE(stats(g).connected);
}

TEST_CASE("undirected phase zero with a sign is still zero") {
    MixedGraph g = parse_mixed_graph("mixedgraph 2 1\n0 1 undirected 0\n");
    CHECK(g.all_undirected());
}

TEST_CASE("serialize round-trips bit-exactly") {
    MixedGraph base = petersen_graph();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        MixedGraph g = orient_random(base, 0.6, PhaseMode::Uniform, seed);
        std::string text = serialize(g);
        MixedGraph back = parse_mixed_graph(text);
        CHECK(back.edges() == g.edges());
        CHECK(serialize(back) == text);
    }
}

TEST_CASE("girth") {
    CHECK(girth(complete_graph(4)) == 3);
    CHECK(girth(petersen_graph()) == 5);
    CHECK_FALSE(girth(complete_graph(2)).has_value());
    CHECK_FALSE(girth(path_graph(5)).has_value());
    CHECK(girth(cycle_graph(6)) == 6);
    CHECK(oracle::girth_via_nonbacktracking(petersen_graph(), 10) == 5);
}

TEST_CASE("generators") {
    MixedGraph k4 = generate("complete:4");
    CHECK(k4.vertex_count() == 4);
    CHECK(k4.edge_count() == 6);
    CHECK(k4.regular_degree() == 3);

    MixedGraph c3 = generate("cycle:3");
    CHECK(c3.edge_count() == 3);
    CHECK(c3.regular_degree() == 2);

    MixedGraph p = generate("petersen");
    CHECK(p.edge_count() == 15);
    CHECK(p.regular_degree() == 3);

    MixedGraph circ = generate("circulant:8:1,3");
    CHECK(circ.regular_degree() == 4);

    MixedGraph r1 = generate("random_regular:10:3:7");
    MixedGraph r2 = random_regular_graph(10, 3, 7);
    CHECK(r1.edges() == r2.edges());
    CHECK(r1.edge_count() == 15);
    CHECK(r1.regular_degree() == 3);
    CHECK(r1.all_undirected());

    CHECK_THROWS_AS(generate("random_regular:5:3:1"), InputError);
    CHECK_THROWS_AS(generate("random_regular:4:4:1"), InputError);
    CHECK_THROWS_AS(generate("hypercube:3"), InputError);
    CHECK_THROWS_AS(generate("complete:x"), InputError);
}

TEST_CASE("random regular graphs are simple and regular") {
    for (auto [n, d] : {std::pair{10, 3}, std::pair{12, 4}}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            MixedGraph g = random_regular_graph(n, d, seed);
            REQUIRE(g.regular_degree() == d);
            check_arc_invariants(g);
        }
    }
}

TEST_CASE("orient_random") {
    MixedGraph c3 = cycle_graph(3);
    SUBCASE("fraction 0 leaves the graph alone") {
        MixedGraph g = orient_random(c3, 0.0, PhaseMode::Uniform, 1);
        CHECK(g.edges() == c3.edges());
        CHECK(g.zero_phases());
    }
    SUBCASE("fraction 1 with zero phases") {
        MixedGraph g = orient_random(c3, 1.0, PhaseMode::Zero, 1);
        for (const Edge& e : g.edges()) CHECK(e.kind == EdgeKind::Directed);
        CHECK(g.zero_phases());
        // Zero phases make every nonzero H entry equal to 1 whatever the
        // orientation, so H_theta is the adjacency matrix.
        OperatorBundle b = build_bundle(g);
        CHECK(oracle::max_diff(b.H_theta, oracle::from_eigen(b.A)) == 0.0);
    }
    SUBCASE("Petersen half oriented is reproducible") {
        MixedGraph a = orient_random(petersen_graph(), 0.5, PhaseMode::Uniform, 3);
        MixedGraph b = orient_random(petersen_graph(), 0.5, PhaseMode::Uniform, 3);
        int directed = 0;
        for (const Edge& e : a.edges()) directed += e.kind == EdgeKind::Directed;
        CHECK(directed == 7);
        CHECK(serialize(a) == serialize(b));
        check_arc_invariants(a);
        for (const Arc& arc : a.arcs()) {
            CHECK(arc.theta > -std::numbers::pi);
            CHECK(arc.theta <= std::numbers::pi);
        }
    }
    CHECK_THROWS_AS(orient_random(orient_random(c3, 1.0, PhaseMode::Zero, 1), 0.5, PhaseMode::Zero, 1),
                    InputError);
    CHECK_THROWS_AS(orient_random(c3, 1.5, PhaseMode::Zero, 1), InputError);
}

TEST_CASE("girth equals the shortest reduced prime class") {
    std::vector<MixedGraph> corpus = {complete_graph(4), cycle_graph(5), circulant_graph(8, {1, 3}),
                                      complete_graph(5), path_graph(4)};
    for (std::uint64_t seed = 0; seed < 6; ++seed) corpus.push_back(random_regular_graph(8, 3, seed));
    for (const MixedGraph& g : corpus) {
        auto classes = enumerate_prime_classes(g, 8, true, WeightKind::Untwisted);
        auto gg = girth(g);
        if (classes.empty()) {
            CHECK_FALSE(gg.has_value());
        } else {
            REQUIRE(gg.has_value());
            CHECK(*gg == classes.front().length);
        }
    }
}

TEST_CASE("corrupting one arc breaks antisymmetry only there") {
    MixedGraph g = complete_graph(3);
    testing::corrupt_arc_theta(g, 1, 0.4);
    CHECK(g.arc(1).theta == 0.4);
    CHECK(g.arc(0).theta == 0.0);
}

}  // TEST_SUITE
