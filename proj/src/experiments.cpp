#include "gzeta/experiments.hpp"

#include "gzeta/cycles.hpp"
#include "gzeta/errors.hpp"
#include "gzeta/linalg.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/zeta.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace gzeta {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<CheckTally> default_tallies(double override_tolerance) {
    auto tol = [&](double fallback) { return override_tolerance > 0.0 ? override_tolerance : fallback; };
    return {
        {"determinant identity", 0.0, tol(1e-9)},
        {"K K* = I_n", 0.0, tol(1e-12)},
        {"C real symmetric", 0.0, tol(1e-12)},
        {"C^2 = I", 0.0, tol(1e-10)},
        {"S_theta unitary", 0.0, tol(1e-12)},
        {"S_theta^2 = I", 0.0, tol(1e-12)},
        {"U_theta unitary", 0.0, tol(1e-10)},
        {"U_theta closed form", 0.0, tol(1e-12)},
        {"H_theta Hermitian", 0.0, tol(1e-12)},
        {"H_tilde = K S K*", 0.0, tol(1e-12)},
        {"spectral mapping", 0.0, tol(1e-7)},
        {"N_k trace vs brute force", 0.0, tol(1e-9)},
        {"N_k trace vs Euler product", 0.0, tol(1e-9)},
        {"|Spec(H_theta)| <= q+1", 0.0, tol(1e-8)},
    };
}

CheckTally& tally_for(std::vector<CheckTally>& tallies, const std::string& name) {
    for (CheckTally& t : tallies) {
        if (t.name == name) return t;
    }
    tallies.push_back({name, 0.0, kDefaultTolerance});
    return tallies.back();
}

void record(std::vector<CheckTally>& tallies, FuzzCaseResult& result, const std::string& name, double deviation) {
    CheckTally& t = tally_for(tallies, name);
    ++t.evaluated;
    if (!(deviation <= t.worst)) t.worst = std::isnan(deviation) ? std::numeric_limits<double>::infinity() : deviation;
    if (!(deviation <= t.tolerance)) {
        ++t.failed;
        result.passed = false;
        result.failures.push_back(name + " deviation " + std::to_string(deviation));
    }
}

MixedGraph random_connected_irregular(int n, std::mt19937_64& rng) {
    std::set<std::pair<int, int>> pairs;
    for (int v = 1; v < n; ++v) {
        int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
        pairs.emplace(parent, v);
    }
    double density = std::uniform_real_distribution<double>(0.15, 0.6)(rng);
    std::bernoulli_distribution extra(density);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (extra(rng)) pairs.emplace(u, v);
        }
    }
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.push_back({u, v});
    return MixedGraph(n, std::move(edges));
}

MixedGraph random_connected_regular(int n, std::mt19937_64& rng) {
    std::vector<int> degrees;
    for (int d = 2; d < n && d <= 5; ++d) {
        if ((n * d) % 2 == 0) degrees.push_back(d);
    }
    int d = degrees[std::uniform_int_distribution<std::size_t>(0, degrees.size() - 1)(rng)];
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MixedGraph g = random_regular_graph(n, d, rng());
        if (g.connected()) return g;
    }
    return cycle_graph(n);
}

}  // namespace

double mckay_density(double lambda, int q) {
    if (q < 1) throw InputError("McKay density needs q >= 1");
    const double qd = q;
    if (std::abs(lambda) > 2.0 * std::sqrt(qd)) return 0.0;
    const double radicand = std::max(0.0, 4.0 * qd - lambda * lambda);
    return (qd + 1.0) / (2.0 * kPi) * std::sqrt(radicand) / ((qd + 1.0) * (qd + 1.0) - lambda * lambda);
}

double mckay_mass(double a, double b, int q) {
    if (q < 1) throw InputError("McKay density needs q >= 1");
    const double qd = q;
    const double edge = 2.0 * std::sqrt(qd);
    const double lo = std::max(a, -edge);
    const double hi = std::min(b, edge);
    if (!(lo < hi)) return 0.0;
    // lambda = edge cos t maps [lo, hi] onto [acos(hi/edge), acos(lo/edge)].
    const double t0 = std::acos(std::clamp(hi / edge, -1.0, 1.0));
    const double t1 = std::acos(std::clamp(lo / edge, -1.0, 1.0));
    auto integrand = [qd](double t) {
        double s = std::sin(t);
        double c = std::cos(t);
        return (qd + 1.0) / (2.0 * kPi) * 4.0 * qd * s * s / ((qd + 1.0) * (qd + 1.0) - 4.0 * qd * c * c);
    };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, t0, t1, 12, 1e-14);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

DensityReport density_experiment(int q, const std::vector<int>& sizes, double bin_width, std::uint64_t seed) {
    if (q < 2) throw InputError("density experiment needs q >= 2");
    if (!(bin_width > 0.0)) throw InputError("bin width must be positive");
    const int degree = q + 1;
    for (int n : sizes) {
        if (n <= degree || (static_cast<long long>(n) * degree) % 2 != 0) {
            throw InputError("size " + std::to_string(n) + " admits no " + std::to_string(degree) + "-regular graph");
        }
    }

    DensityReport report;
    report.q = q;
    report.bin_width = bin_width;
    const int half_bins = static_cast<int>(std::ceil(degree / bin_width - 1e-12));
    for (int i = -half_bins; i <= half_bins; ++i) report.bin_edges.push_back(i * bin_width);
    const std::size_t bins = report.bin_edges.size() - 1;
    for (std::size_t i = 0; i < bins; ++i) {
        report.reference.push_back(mckay_mass(report.bin_edges[i], report.bin_edges[i + 1], q));
    }

    for (std::size_t task = 0; task < sizes.size(); ++task) {
        DensitySample sample;
        sample.n = sizes[task];
        sample.seed = derive_seed(seed, task);
        MixedGraph g = random_regular_graph(sample.n, degree, sample.seed);
        sample.girth = girth(g);

        RealMatrix adjacency = RealMatrix::Zero(sample.n, sample.n);
        for (const Arc& a : g.arcs()) adjacency(a.origin, a.terminus) = 1.0;
        auto spectrum = linalg::symmetric_eigenvalues(adjacency);

        sample.histogram.assign(bins, 0.0);
        const double lowest = report.bin_edges.front();
        for (double lambda : spectrum) {
            sample.spectral_radius = std::max(sample.spectral_radius, std::abs(lambda));
            auto index = static_cast<long long>(std::floor((lambda - lowest) / bin_width));
            index = std::clamp<long long>(index, 0, static_cast<long long>(bins) - 1);
            sample.histogram[static_cast<std::size_t>(index)] += 1.0 / sample.n;
        }
        for (std::size_t i = 0; i < bins; ++i) {
            sample.l1_distance += std::abs(sample.histogram[i] - report.reference[i]);
        }
        report.samples.push_back(std::move(sample));
    }
    return report;
}

MixedGraph random_fuzz_graph(std::uint64_t seed, int index) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
    const int n = std::uniform_int_distribution<int>(4, 10)(rng);
    MixedGraph base = std::bernoulli_distribution(0.5)(rng) ? random_connected_regular(n, rng)
                                                             : random_connected_irregular(n, rng);
    const double fraction = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const PhaseMode mode = std::bernoulli_distribution(0.2)(rng) ? PhaseMode::Zero : PhaseMode::Uniform;
    return orient_random(base, fraction, mode, rng());
}

FuzzCaseResult check_graph_identities(const MixedGraph& input, std::uint64_t seed, const FuzzOptions& options,
                                      std::vector<CheckTally>& tallies) {
    FuzzCaseResult result;
    result.description = "n=" + std::to_string(input.vertex_count()) + " m=" + std::to_string(input.edge_count());
    if (tallies.empty()) tallies = default_tallies(options.tolerance_override);

    MixedGraph graph = input;
    if (options.inject_phase_fault) {
        // Overwrite the inverse arc of the first edge so that it no longer
        // carries minus the designated phase.
        const Arc& designated = graph.arc(0);
        testing::corrupt_arc_theta(graph, 1, designated.theta + 0.7);
    }

    BuildOptions build;
    build.verify_closed_form = false;
    const OperatorBundle bundle = build_bundle(graph, build);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_det = 0.0;
    for (int i = 0; i < options.points_per_case; ++i) {
        Complex u = std::polar(0.9 * std::sqrt(unit(rng)), 2.0 * kPi * unit(rng));
        DeterminantCheck c = check_determinant_identity(graph, bundle, u);
        worst_det = std::max({worst_det, c.direct_error, 10.0 * c.forms_error});
    }
    if (options.points_per_case > 0) record(tallies, result, "determinant identity", worst_det);

    for (const IdentityCheck& check : verify_bundle(graph, bundle, options.tolerance_override)) {
        record(tallies, result, check.name, check.deviation);
    }

    if (graph.connected()) {
        SpectralMapping mapping = spectrum_via_mapping(graph, bundle, std::numeric_limits<double>::infinity());
        record(tallies, result, "spectral mapping", mapping.max_distance);
    }

    const int order = options.max_walk_length;
    ZetaSeries trace = series_coefficients(bundle, order);
    ZetaSeries euler = euler_log_coefficients(graph, order);
    double worst_brute = 0.0;
    double worst_euler = 0.0;
    for (int k = 1; k <= order; ++k) {
        worst_brute = std::max(worst_brute, linalg::scaled_error(trace.n(k), n_k_bruteforce(graph, k)));
        worst_euler = std::max(worst_euler, linalg::scaled_error(trace.n(k), euler.n(k)));
    }
    record(tallies, result, "N_k trace vs brute force", worst_brute);
    record(tallies, result, "N_k trace vs Euler product", worst_euler);

    if (graph.regular_degree()) {
        IdentityCheck bound = verify_hermitian_bound(graph, bundle);
        record(tallies, result, bound.name, bound.deviation);
    }
    return result;
}

FuzzSummary fuzz_identities_on(const std::vector<MixedGraph>& graphs, std::uint64_t seed, const FuzzOptions& options) {
    FuzzSummary summary;
    summary.checks = default_tallies(options.tolerance_override);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        FuzzCaseResult r = check_graph_identities(graphs[i], derive_seed(seed ^ 0x5eedULL, i), options, summary.checks);
        ++summary.cases;
        if (r.passed) {
            ++summary.passed;
        } else {
            ++summary.failed;
            for (const std::string& f : r.failures) {
                summary.failures.push_back("case " + std::to_string(i) + " (" + r.description + "): " + f);
            }
        }
    }
    return summary;
}

FuzzSummary fuzz_identities(int count, std::uint64_t seed, const FuzzOptions& options) {
    if (count < 1) throw InputError("fuzz count must be >= 1");
    std::vector<MixedGraph> graphs;
    graphs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) graphs.push_back(random_fuzz_graph(seed, i));
    return fuzz_identities_on(graphs, seed, options);
}

}  // namespace gzeta
