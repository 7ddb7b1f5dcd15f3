#pragma once

#include "gzeta/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gzeta {

// Limiting eigenvalue density of large random (q+1)-regular graphs; zero
// outside |lambda| <= 2 sqrt(q).
double mckay_density(double lambda, int q);

// Integral of the density over [a, b], adaptive Gauss-Kronrod after the
// substitution lambda = 2 sqrt(q) cos t, which removes the edge singularities.
double mckay_mass(double a, double b, int q);

struct DensitySample {
    int n = 0;
    std::uint64_t seed = 0;
    std::optional<int> girth;
    std::vector<double> histogram;  // normalized eigenvalue mass per bin
    double l1_distance = 0.0;
    double spectral_radius = 0.0;
};

struct DensityReport {
    int q = 0;
    double bin_width = 0.0;
    std::vector<double> bin_edges;
    std::vector<double> reference;  // McKay mass per bin
    std::vector<DensitySample> samples;
};

// One random (q+1)-regular graph per size; bins of the given width aligned
// to 0 and covering [-(q+1), q+1].
DensityReport density_experiment(int q, const std::vector<int>& sizes, double bin_width, std::uint64_t seed);

// Per-task seed derived from (seed, index) with a splitmix64 step.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct CheckTally {
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    int evaluated = 0;
    int failed = 0;
};

struct FuzzCaseResult {
    std::string description;
    bool passed = true;
    std::vector<std::string> failures;
};

struct FuzzSummary {
    int cases = 0;
    int passed = 0;
    int failed = 0;
    std::vector<CheckTally> checks;  // fixed order
    std::vector<std::string> failures;

    bool ok() const { return failed == 0; }
};

struct FuzzOptions {
    int max_walk_length = 6;   // N_k cross-checks for k <= this
    int points_per_case = 5;   // random u with |u| <= 0.9
    double tolerance_override = 0.0;
    // Mutation hook: break the phase antisymmetry of one arc before the
    // checks run. The H_tilde = K S K* check must then fail.
    bool inject_phase_fault = false;
};

// Random connected mixed graph for fuzz case `index`: n in [4, 10], regular
// or irregular, random orientation fraction, uniform or zero phases.
MixedGraph random_fuzz_graph(std::uint64_t seed, int index);

// Runs every applicable identity check on one graph and folds the residuals
// into the tallies.
FuzzCaseResult check_graph_identities(const MixedGraph& graph, std::uint64_t seed, const FuzzOptions& options,
                                      std::vector<CheckTally>& tallies);

FuzzSummary fuzz_identities(int count, std::uint64_t seed, const FuzzOptions& options = {});

// Runs the identity checks on caller-supplied graphs instead of random ones.
FuzzSummary fuzz_identities_on(const std::vector<MixedGraph>& graphs, std::uint64_t seed,
                               const FuzzOptions& options = {});

}  // namespace gzeta
