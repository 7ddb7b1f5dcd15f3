#pragma once

#include "gzeta/graph.hpp"
#include "gzeta/linalg.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/zeta.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gzeta {

// Closed arc sequence: t(e_i) = o(e_{i+1}) and t(e_r) = o(e_1).
struct Cycle {
    std::vector<int> arcs;
    int length() const { return static_cast<int>(arcs.size()); }
};

// Equivalence class of a prime cycle under rotation, keyed by its
// lexicographically least rotation.
struct PrimeCycleClass {
    std::vector<int> canonical_arcs;
    int length = 0;
    Complex weight;
    bool reduced = false;
};

enum class WeightKind {
    Twisted,   // w(e,f) = e^{-i theta(f)} (2/deg t(e) - [f = e^-1])
    Untwisted  // the same table with every phase set to zero
};

struct EnumerationLimits {
    std::int64_t max_nodes = 400'000'000;  // DFS nodes visited before BudgetExceeded
};

// Transition weight w(e, f); zero unless t(e) = o(f).
Complex transition_weight(const MixedGraph& graph, int e, int f, WeightKind kind = WeightKind::Twisted);

// Product of consecutive weights including the wrap-around pair. When a
// bundle is supplied, the product of the matching entries of U_theta^t is
// compared against it (1e-12, else IdentityViolation). Throws InputError
// for an open sequence.
Complex cycle_weight(const MixedGraph& graph, const Cycle& cycle, WeightKind kind = WeightKind::Twisted,
                     const OperatorBundle* bundle = nullptr);

bool is_closed(const MixedGraph& graph, std::span<const int> arcs);

// Neither a backtracking nor a tail.
bool is_reduced(std::span<const int> arcs);

// Not a k-fold repetition of a shorter sequence for any k >= 2.
bool is_primitive(std::span<const int> arcs);

std::vector<int> canonical_rotation(std::span<const int> arcs);

// Sum of w(C) over based closed walks of length k (each starting arc counted).
Complex n_k_bruteforce(const MixedGraph& graph, int k, WeightKind kind = WeightKind::Twisted,
                       const EnumerationLimits& limits = {});

// All prime classes of length <= max_length with nonzero weight, sorted by
// (length, canonical arcs). Zero-weight transitions are pruned; with
// reduced_only, backtracking steps and tails are excluded too.
std::vector<PrimeCycleClass> enumerate_prime_classes(const MixedGraph& graph, int max_length, bool reduced_only,
                                                     WeightKind kind = WeightKind::Twisted,
                                                     const EnumerationLimits& limits = {});

// N_p = sum over classes C and k >= 1 with k|C| = p of |C| w(C)^k.
// Classes must cover every length up to order.
ZetaSeries euler_log_coefficients(std::span<const PrimeCycleClass> classes, int order);
ZetaSeries euler_log_coefficients(const MixedGraph& graph, int order, WeightKind kind = WeightKind::Twisted,
                                  const EnumerationLimits& limits = {});

// Truncated Euler product prod_C (1 - w(C) u^{|C|}) over the given classes.
Complex euler_product_reciprocal(std::span<const PrimeCycleClass> classes, Complex u);

}  // namespace gzeta
