#include "gzeta/graph.hpp"

#include "gzeta/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace gzeta {

namespace {

constexpr double kPi = std::numbers::pi;

std::string edge_label(const Edge& e) {
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

bool compute_connected(int n, const std::vector<std::vector<int>>& out_arcs, const std::vector<Arc>& arcs) {
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int a : out_arcs[static_cast<std::size_t>(v)]) {
            int w = arcs[static_cast<std::size_t>(a)].terminus;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == n;
}

template <class T>
bool parse_number(std::string_view token, T& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

int parse_int_arg(std::string_view token, std::string_view spec) {
    int value = 0;
    if (!parse_number(token, value)) {
        throw InputError("bad integer '" + std::string(token) + "' in generator spec '" + std::string(spec) + "'");
    }
    return value;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

}  // namespace

double wrap_phase(double phase) {
    if (!std::isfinite(phase)) throw InputError("phase must be finite");
    if (phase > -kPi && phase <= kPi) return phase;
    double r = std::remainder(phase, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

MixedGraph::MixedGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 1) throw InputError("graph must have at least one vertex");

    std::set<std::pair<int, int>> seen;
    for (Edge& e : edges_) {
        if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_) {
            throw InputError("vertex id out of range in edge " + edge_label(e));
        }
        if (e.u == e.v) throw InputError("loop edge at vertex " + std::to_string(e.u));
        if (e.kind == EdgeKind::Undirected) {
            if (e.phase != 0.0) throw InputError("nonzero phase on undirected edge " + edge_label(e));
            e.phase = 0.0;
            if (e.u > e.v) std::swap(e.u, e.v);
        } else {
            e.phase = wrap_phase(e.phase);
        }
        if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
            throw InputError("duplicate edge " + edge_label(e));
        }
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });

    degrees_.assign(static_cast<std::size_t>(vertex_count_), 0);
    out_arcs_.assign(static_cast<std::size_t>(vertex_count_), {});
    arcs_.reserve(2 * edges_.size());
    for (std::size_t j = 0; j < edges_.size(); ++j) {
        const Edge& e = edges_[j];
        int id = static_cast<int>(2 * j);
        bool directed = e.kind == EdgeKind::Directed;
        arcs_.push_back(Arc{id, e.u, e.v, id + 1, e.phase, true});
        arcs_.push_back(Arc{id + 1, e.v, e.u, id, directed ? -e.phase : 0.0, !directed});
        ++degrees_[static_cast<std::size_t>(e.u)];
        ++degrees_[static_cast<std::size_t>(e.v)];
    }
    for (const Arc& a : arcs_) out_arcs_[static_cast<std::size_t>(a.origin)].push_back(a.id);
    connected_ = compute_connected(vertex_count_, out_arcs_, arcs_);
}

int MixedGraph::min_degree() const { return *std::min_element(degrees_.begin(), degrees_.end()); }

int MixedGraph::max_degree() const { return *std::max_element(degrees_.begin(), degrees_.end()); }

std::optional<int> MixedGraph::regular_degree() const {
    int d = degrees_.front();
    for (int x : degrees_) {
        if (x != d) return std::nullopt;
    }
    return d;
}

bool MixedGraph::all_undirected() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.kind == EdgeKind::Undirected; });
}

bool MixedGraph::zero_phases() const {
    return std::all_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.theta == 0.0; });
}

void testing::corrupt_arc_theta(MixedGraph& graph, int arc, double theta) {
    graph.arcs_.at(static_cast<std::size_t>(arc)).theta = theta;
}

MixedGraph parse_mixed_graph(std::string_view text) {
    int n = -1;
    int m = -1;
    std::vector<Edge> edges;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        auto fail = [&](const std::string& why) {
            throw InputError("line " + std::to_string(line_no) + ": " + why);
        };
        if (n < 0) {
            if (tokens.size() != 3 || tokens[0] != "mixedgraph" || !parse_number(tokens[1], n) ||
                !parse_number(tokens[2], m) || n < 1 || m < 0) {
                fail("expected header 'mixedgraph <n> <m>'");
            }
            edges.reserve(static_cast<std::size_t>(m));
        } else {
            if (static_cast<int>(edges.size()) == m) fail("more edge lines than declared");
            Edge e;
            if (tokens.size() < 3 || tokens.size() > 4 || !parse_number(tokens[0], e.u) ||
                !parse_number(tokens[1], e.v)) {
                fail("expected '<u> <v> <kind> [<phase>]'");
            }
            if (tokens[2] == "undirected") {
                e.kind = EdgeKind::Undirected;
            } else if (tokens[2] == "directed") {
                e.kind = EdgeKind::Directed;
            } else {
                fail("unknown edge kind '" + std::string(tokens[2]) + "'");
            }
            if (tokens.size() == 4) {
                if (!parse_number(tokens[3], e.phase) || !std::isfinite(e.phase)) fail("malformed phase");
                if (e.kind == EdgeKind::Undirected && e.phase != 0.0) fail("phase given on undirected edge");
            }
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) fail("vertex id out of range");
            if (e.u == e.v) fail("loop edge");
            edges.push_back(e);
        }
        if (end == text.size()) break;
    }
    if (n < 0) throw InputError("missing 'mixedgraph' header");
    if (static_cast<int>(edges.size()) != m) {
        throw InputError("declared " + std::to_string(m) + " edges but found " + std::to_string(edges.size()));
    }
    return MixedGraph(n, std::move(edges));
}

std::string serialize(const MixedGraph& graph) {
    std::string out = "mixedgraph " + std::to_string(graph.vertex_count()) + " " +
                      std::to_string(graph.edge_count()) + "\n";
    for (const Edge& e : graph.edges()) {
        out += std::to_string(e.u) + " " + std::to_string(e.v);
        if (e.kind == EdgeKind::Undirected) {
            out += " undirected\n";
        } else {
            out += " directed " + format_double(e.phase) + "\n";
        }
    }
    return out;
}

std::optional<int> girth(const MixedGraph& graph) {
    const int n = graph.vertex_count();
    int best = 0;
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> parent_arc(static_cast<std::size_t>(n));
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(root)] = 0;
        parent_arc[static_cast<std::size_t>(root)] = -1;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int a : graph.out_arcs(v)) {
                if (MixedGraph::inverse(a) == parent_arc[static_cast<std::size_t>(v)]) continue;
                int w = graph.arc(a).terminus;
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    parent_arc[static_cast<std::size_t>(w)] = a;
                    queue.push_back(w);
                } else {
                    int len = dist[static_cast<std::size_t>(v)] + dist[static_cast<std::size_t>(w)] + 1;
                    if (best == 0 || len < best) best = len;
                }
            }
        }
    }
    if (best == 0) return std::nullopt;
    return best;
}

GraphStats stats(const MixedGraph& graph) {
    GraphStats s;
    s.n = graph.vertex_count();
    s.m = graph.edge_count();
    s.regular_degree = graph.regular_degree();
    s.min_degree = graph.min_degree();
    s.connected = graph.connected();
    s.girth = girth(graph);
    return s;
}

MixedGraph complete_graph(int n) {
    if (n < 1) throw InputError("complete graph needs n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    }
    return MixedGraph(n, std::move(edges));
}

MixedGraph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle graph needs n >= 3");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
    return MixedGraph(n, std::move(edges));
}

MixedGraph path_graph(int n) {
    if (n < 1) throw InputError("path graph needs n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
    return MixedGraph(n, std::move(edges));
}

MixedGraph petersen_graph() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.push_back({i, (i + 1) % 5});          // outer pentagon
        edges.push_back({i, i + 5});                // spokes
        edges.push_back({5 + i, 5 + (i + 2) % 5});  // inner pentagram
    }
    return MixedGraph(10, std::move(edges));
}

MixedGraph circulant_graph(int n, const std::vector<int>& steps) {
    if (n < 2) throw InputError("circulant graph needs n >= 2");
    std::set<std::pair<int, int>> pairs;
    for (int s : steps) {
        int step = ((s % n) + n) % n;
        if (step == 0) throw InputError("circulant step must be nonzero mod n");
        for (int u = 0; u < n; ++u) {
            int v = (u + step) % n;
            pairs.emplace(std::min(u, v), std::max(u, v));
        }
    }
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.push_back({u, v});
    return MixedGraph(n, std::move(edges));
}

MixedGraph random_regular_graph(int n, int d, std::uint64_t seed, int max_attempts) {
    if (n < 1 || d < 0 || d >= n) throw InputError("random_regular needs 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw InputError("random_regular needs n*d even");

    std::mt19937_64 rng(seed);
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        stubs.clear();
        for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(d), v);
        std::shuffle(stubs.begin(), stubs.end(), rng);

        std::set<std::pair<int, int>> pairs;
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i];
            int v = stubs[i + 1];
            if (u == v || !pairs.emplace(std::min(u, v), std::max(u, v)).second) {
                simple = false;
                break;
            }
        }
        if (!simple) continue;
        std::vector<Edge> edges;
        edges.reserve(pairs.size());
        for (auto [u, v] : pairs) edges.push_back({u, v});
        return MixedGraph(n, std::move(edges));
    }
    throw BudgetExceeded("random_regular(" + std::to_string(n) + "," + std::to_string(d) +
                         "): no simple pairing after " + std::to_string(max_attempts) + " attempts");
}

MixedGraph generate(std::string_view spec, std::uint64_t default_seed) {
    auto parts = split(spec, ':');
    std::string_view family = parts[0];
    auto expect = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() < lo || parts.size() > hi) {
            throw InputError("wrong number of arguments in generator spec '" + std::string(spec) + "'");
        }
    };
    if (family == "complete") {
        expect(2, 2);
        return complete_graph(parse_int_arg(parts[1], spec));
    }
    if (family == "cycle") {
        expect(2, 2);
        return cycle_graph(parse_int_arg(parts[1], spec));
    }
    if (family == "path") {
        expect(2, 2);
        return path_graph(parse_int_arg(parts[1], spec));
    }
    if (family == "petersen") {
        expect(1, 1);
        return petersen_graph();
    }
    if (family == "circulant") {
        expect(3, 3);
        std::vector<int> steps;
        for (auto s : split(parts[2], ',')) steps.push_back(parse_int_arg(s, spec));
        return circulant_graph(parse_int_arg(parts[1], spec), steps);
    }
    if (family == "random_regular") {
        expect(3, 4);
        std::uint64_t seed = default_seed;
        if (parts.size() == 4 && !parse_number(parts[3], seed)) {
            throw InputError("bad seed in generator spec '" + std::string(spec) + "'");
        }
        return random_regular_graph(parse_int_arg(parts[1], spec), parse_int_arg(parts[2], spec), seed);
    }
    throw InputError("unknown graph family '" + std::string(family) + "'");
}

MixedGraph orient_random(const MixedGraph& graph, double fraction, PhaseMode phases, std::uint64_t seed) {
    if (!graph.all_undirected()) throw InputError("orient_random expects an all-undirected graph");
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InputError("orientation fraction must lie in [0, 1]");

    const int m = graph.edge_count();
    const int k = static_cast<int>(std::floor(fraction * m));
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> chosen(order.begin(), order.begin() + k);
    std::sort(chosen.begin(), chosen.end());

    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Edge> edges = graph.edges();
    for (int j : chosen) {
        Edge& e = edges[static_cast<std::size_t>(j)];
        int lo = std::min(e.u, e.v);
        int hi = std::max(e.u, e.v);
        if (coin(rng)) std::swap(lo, hi);
        e.u = lo;
        e.v = hi;
        e.kind = EdgeKind::Directed;
        e.phase = phases == PhaseMode::Zero ? 0.0 : kPi - 2.0 * kPi * unit(rng);
    }
    return MixedGraph(graph.vertex_count(), std::move(edges));
}

}  // namespace gzeta
