#include "gzeta/cycles.hpp"

#include "gzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gzeta {

namespace {

struct Transition {
    int to;
    Complex weight;
};

// Nonzero transitions out of every arc, in arc-id order of the target.
std::vector<std::vector<Transition>> transition_table(const MixedGraph& graph, WeightKind kind, bool skip_backtrack) {
    std::vector<std::vector<Transition>> table(static_cast<std::size_t>(graph.arc_count()));
    for (const Arc& e : graph.arcs()) {
        for (int f : graph.out_arcs(e.terminus)) {
            if (skip_backtrack && f == e.inverse) continue;
            Complex w = transition_weight(graph, e.id, f, kind);
            if (w != Complex(0.0)) table[static_cast<std::size_t>(e.id)].push_back({f, w});
        }
    }
    return table;
}

Complex lookup(const std::vector<Transition>& row, int to) {
    for (const Transition& t : row) {
        if (t.to == to) return t.weight;
    }
    return 0.0;
}

// Strictly smaller than every proper rotation: canonical and primitive at once.
bool is_lyndon(std::span<const int> s) {
    const std::size_t r = s.size();
    for (std::size_t shift = 1; shift < r; ++shift) {
        for (std::size_t i = 0; i < r; ++i) {
            int a = s[i];
            int b = s[(i + shift) % r];
            if (a < b) break;
            if (a > b) return false;
            if (i + 1 == r) return false;  // equal rotation: periodic
        }
    }
    return true;
}

class BudgetCounter {
public:
    BudgetCounter(std::int64_t limit, const char* what) : limit_(limit), what_(what) {}
    void tick() {
        if (++visited_ > limit_) {
            throw BudgetExceeded(std::string(what_) + ": exceeded work budget of " + std::to_string(limit_) +
                                 " search nodes");
        }
    }

private:
    std::int64_t limit_;
    std::int64_t visited_ = 0;
    const char* what_;
};

}  // namespace

Complex transition_weight(const MixedGraph& graph, int e, int f, WeightKind kind) {
    const Arc& from = graph.arc(e);
    const Arc& to = graph.arc(f);
    if (from.terminus != to.origin) return 0.0;
    double coin = 2.0 / graph.degree(from.terminus) - (f == from.inverse ? 1.0 : 0.0);
    if (kind == WeightKind::Untwisted) return coin;
    return std::polar(1.0, -to.theta) * coin;
}

bool is_closed(const MixedGraph& graph, std::span<const int> arcs) {
    if (arcs.empty()) return false;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        int next = arcs[(i + 1) % arcs.size()];
        if (graph.arc(arcs[i]).terminus != graph.arc(next).origin) return false;
    }
    return true;
}

bool is_reduced(std::span<const int> arcs) {
    const std::size_t r = arcs.size();
    for (std::size_t i = 0; i < r; ++i) {
        if (arcs[(i + 1) % r] == MixedGraph::inverse(arcs[i])) return false;
    }
    return true;
}

bool is_primitive(std::span<const int> arcs) {
    const std::size_t r = arcs.size();
    for (std::size_t p = 1; p < r; ++p) {
        if (r % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < r && periodic; ++i) periodic = arcs[i] == arcs[i - p];
        if (periodic) return false;
    }
    return true;
}

std::vector<int> canonical_rotation(std::span<const int> arcs) {
    std::vector<int> best(arcs.begin(), arcs.end());
    std::vector<int> candidate(arcs.size());
    for (std::size_t shift = 1; shift < arcs.size(); ++shift) {
        for (std::size_t i = 0; i < arcs.size(); ++i) candidate[i] = arcs[(i + shift) % arcs.size()];
        if (candidate < best) best = candidate;
    }
    return best;
}

Complex cycle_weight(const MixedGraph& graph, const Cycle& cycle, WeightKind kind, const OperatorBundle* bundle) {
    if (!is_closed(graph, cycle.arcs)) throw InputError("cycle_weight: arc sequence is not closed");
    const std::size_t r = cycle.arcs.size();
    Complex w = 1.0;
    Complex from_matrix = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
        int e = cycle.arcs[i];
        int f = cycle.arcs[(i + 1) % r];
        w *= transition_weight(graph, e, f, kind);
        if (bundle) from_matrix *= bundle->U_theta(f, e);  // (U_theta^t)_{ef}
    }
    if (bundle && kind == WeightKind::Twisted && std::abs(w - from_matrix) > 1e-12) {
        throw IdentityViolation("cycle weight differs from the product of U_theta^t entries");
    }
    return w;
}

Complex n_k_bruteforce(const MixedGraph& graph, int k, WeightKind kind, const EnumerationLimits& limits) {
    if (k < 1) throw InputError("n_k_bruteforce: k must be >= 1");
    const auto table = transition_table(graph, kind, false);
    BudgetCounter budget(limits.max_nodes, "n_k_bruteforce");
    Complex total = 0.0;

    // Iterative DFS over walks e_1..e_k starting at each arc.
    std::vector<int> path;
    std::vector<std::size_t> cursor;
    std::vector<Complex> partial;
    for (int start = 0; start < graph.arc_count(); ++start) {
        path.assign(1, start);
        cursor.assign(1, 0);
        partial.assign(1, Complex(1.0));
        while (!path.empty()) {
            const std::size_t depth = path.size();
            const int last = path.back();
            if (static_cast<int>(depth) == k) {
                total += partial.back() * lookup(table[static_cast<std::size_t>(last)], start);
                path.pop_back();
                cursor.pop_back();
                partial.pop_back();
                continue;
            }
            const auto& row = table[static_cast<std::size_t>(last)];
            std::size_t& next = cursor.back();
            if (next == row.size()) {
                path.pop_back();
                cursor.pop_back();
                partial.pop_back();
                continue;
            }
            const Transition& t = row[next++];
            budget.tick();
            Complex w = partial.back() * t.weight;
            path.push_back(t.to);
            cursor.push_back(0);
            partial.push_back(w);
        }
    }
    return total;
}

std::vector<PrimeCycleClass> enumerate_prime_classes(const MixedGraph& graph, int max_length, bool reduced_only,
                                                     WeightKind kind, const EnumerationLimits& limits) {
    if (max_length < 2) throw InputError("enumerate_prime_classes: max_length must be >= 2");
    const auto table = transition_table(graph, kind, reduced_only);
    BudgetCounter budget(limits.max_nodes, "enumerate_prime_classes");
    std::vector<PrimeCycleClass> classes;

    // A canonical representative starts at its minimum arc, so only arcs with
    // id >= start are explored.
    std::vector<int> path;
    std::vector<std::size_t> cursor;
    std::vector<Complex> partial;
    for (int start = 0; start < graph.arc_count(); ++start) {
        path.assign(1, start);
        cursor.assign(1, 0);
        partial.assign(1, Complex(1.0));
        bool fresh = true;
        while (!path.empty()) {
            const int last = path.back();
            if (fresh) {
                fresh = false;
                Complex closing = lookup(table[static_cast<std::size_t>(last)], start);
                if (closing != Complex(0.0) && path.size() >= 2 && is_lyndon(path)) {
                    classes.push_back({path, static_cast<int>(path.size()), partial.back() * closing,
                                       is_reduced(path)});
                }
            }
            const auto& row = table[static_cast<std::size_t>(last)];
            std::size_t& next = cursor.back();
            while (next < row.size() && row[next].to < start) ++next;
            if (static_cast<int>(path.size()) == max_length || next == row.size()) {
                path.pop_back();
                cursor.pop_back();
                partial.pop_back();
                continue;
            }
            const Transition& t = row[next++];
            budget.tick();
            Complex w = partial.back() * t.weight;
            path.push_back(t.to);
            cursor.push_back(0);
            partial.push_back(w);
            fresh = true;
        }
    }
    std::sort(classes.begin(), classes.end(), [](const PrimeCycleClass& a, const PrimeCycleClass& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.canonical_arcs < b.canonical_arcs;
    });
    return classes;
}

ZetaSeries euler_log_coefficients(std::span<const PrimeCycleClass> classes, int order) {
    if (order < 1) throw InputError("euler_log_coefficients: order must be >= 1");
    ZetaSeries series;
    series.provenance = SeriesProvenance::Cycles;
    series.coefficients.assign(static_cast<std::size_t>(order), Complex(0.0));
    for (const PrimeCycleClass& c : classes) {
        Complex power = 1.0;
        for (int p = c.length; p <= order; p += c.length) {
            power *= c.weight;
            series.coefficients[static_cast<std::size_t>(p - 1)] += static_cast<double>(c.length) * power;
        }
    }
    return series;
}

ZetaSeries euler_log_coefficients(const MixedGraph& graph, int order, WeightKind kind, const EnumerationLimits& limits) {
    if (order < 1) throw InputError("euler_log_coefficients: order must be >= 1");
    // No closed walk of length 1 exists in a loopless graph.
    if (order == 1) return euler_log_coefficients(std::span<const PrimeCycleClass>{}, 1);
    auto classes = enumerate_prime_classes(graph, order, false, kind, limits);
    return euler_log_coefficients(classes, order);
}

Complex euler_product_reciprocal(std::span<const PrimeCycleClass> classes, Complex u) {
    Complex product = 1.0;
    for (const PrimeCycleClass& c : classes) product *= 1.0 - c.weight * linalg::ipow(u, c.length);
    return product;
}

}  // namespace gzeta
