#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gzeta {

enum class EdgeKind { Undirected, Directed };

// One edge of a mixed graph. For a Directed edge the arc u->v is the
// designated orientation and carries theta = phase; its inverse carries -phase.
struct Edge {
    int u = 0;
    int v = 0;
    EdgeKind kind = EdgeKind::Undirected;
    double phase = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Arc 2j is (u->v) and arc 2j+1 is (v->u) for edge j, so inverse(e) == e ^ 1.
struct Arc {
    int id = 0;
    int origin = 0;
    int terminus = 0;
    int inverse = 0;
    double theta = 0.0;
    bool designated = true;  // member of A(G)
};

class MixedGraph;

namespace testing {
// Overwrites a single arc phase without touching its inverse. Breaks the
// antisymmetry invariant on purpose; used for mutation tests only.
void corrupt_arc_theta(MixedGraph& graph, int arc, double theta);
}  // namespace testing

// Finite simple mixed graph on vertices 0..n-1. Immutable after construction.
class MixedGraph {
public:
    // Validates simplicity and vertex ranges; edges are stored sorted by (u, v).
    // Throws InputError on violation.
    MixedGraph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int arc_count() const { return static_cast<int>(arcs_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }
    static constexpr int inverse(int arc) { return arc ^ 1; }

    int degree(int v) const { return degrees_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& degrees() const { return degrees_; }
    int min_degree() const;
    int max_degree() const;
    std::optional<int> regular_degree() const;

    // Arcs e with o(e) == v, in arc-id order.
    const std::vector<int>& out_arcs(int v) const { return out_arcs_[static_cast<std::size_t>(v)]; }

    bool connected() const { return connected_; }
    bool all_undirected() const;
    bool zero_phases() const;

private:
    friend void testing::corrupt_arc_theta(MixedGraph&, int, double);

    int vertex_count_;
    std::vector<Edge> edges_;
    std::vector<Arc> arcs_;
    std::vector<int> degrees_;
    std::vector<std::vector<int>> out_arcs_;
    bool connected_ = false;
};

struct GraphStats {
    int n = 0;
    int m = 0;
    std::optional<int> regular_degree;
    int min_degree = 0;
    bool connected = false;
    std::optional<int> girth;
};

// Parses the `mixedgraph <n> <m>` text format. Disconnected graphs are
// accepted; check MixedGraph::connected().
MixedGraph parse_mixed_graph(std::string_view text);

// Canonical text form; parse_mixed_graph(serialize(g)) reproduces g bit-exactly.
std::string serialize(const MixedGraph& graph);

// Shortest cycle of the underlying undirected graph, none for forests.
std::optional<int> girth(const MixedGraph& graph);

GraphStats stats(const MixedGraph& graph);

MixedGraph complete_graph(int n);
MixedGraph cycle_graph(int n);
MixedGraph path_graph(int n);
MixedGraph petersen_graph();
MixedGraph circulant_graph(int n, const std::vector<int>& steps);

// Pairing-model sampler with rejection of loops and multi-edges.
MixedGraph random_regular_graph(int n, int d, std::uint64_t seed, int max_attempts = 100000);

// Generator spec strings: complete:N, cycle:N, path:N, petersen,
// circulant:N:S1,S2,..., random_regular:N:D[:SEED].
MixedGraph generate(std::string_view spec, std::uint64_t default_seed = 0);

enum class PhaseMode { Zero, Uniform };

// Turns floor(fraction * m) edges into directed edges with seeded heads and
// phases drawn from (-pi, pi] (or all zero).
MixedGraph orient_random(const MixedGraph& graph, double fraction, PhaseMode phases, std::uint64_t seed);

// Phase wrapped into (-pi, pi]; values already in range are returned unchanged.
double wrap_phase(double phase);

}  // namespace gzeta
