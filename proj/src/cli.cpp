#include "gzeta/cli.hpp"

#include "gzeta/cycles.hpp"
#include "gzeta/errors.hpp"
#include "gzeta/experiments.hpp"
#include "gzeta/graph.hpp"
#include "gzeta/operators.hpp"
#include "gzeta/trace_formula.hpp"
#include "gzeta/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace gzeta::cli {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const std::vector<Complex>& values) {
    Json out = Json::array();
    for (Complex z : values) out.push_back(to_json(z));
    return out;
}

std::string trim(std::string s) {
    auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
    return s;
}

double parse_double(const std::string& token, const std::string& context) {
    std::string t = trim(token);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
        throw InputError("cannot read a number from '" + token + "' in " + context);
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Per-edge phase overrides: lines "u v phase", each turning edge {u, v}
// into a directed edge u -> v.
MixedGraph apply_phase_file(const MixedGraph& graph, const std::string& path) {
    std::map<std::pair<int, int>, std::pair<bool, double>> overrides;
    std::istringstream in(read_file(path));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream fields(t);
        std::string su, sv, sp, extra;
        if (!(fields >> su >> sv >> sp) || (fields >> extra)) {
            throw InputError(path + ":" + std::to_string(line_no) + ": expected 'u v phase'");
        }
        const std::string where = path + ":" + std::to_string(line_no);
        int u = static_cast<int>(parse_double(su, where));
        int v = static_cast<int>(parse_double(sv, where));
        double phase = parse_double(sp, where);
        bool forward = u < v;
        overrides[{std::min(u, v), std::max(u, v)}] = {forward, phase};
    }
    std::vector<Edge> edges = graph.edges();
    std::size_t used = 0;
    for (Edge& e : edges) {
        auto it = overrides.find({std::min(e.u, e.v), std::max(e.u, e.v)});
        if (it == overrides.end()) continue;
        ++used;
        auto [forward, phase] = it->second;
        int lo = std::min(e.u, e.v);
        int hi = std::max(e.u, e.v);
        e = forward ? Edge{lo, hi, EdgeKind::Directed, phase} : Edge{hi, lo, EdgeKind::Directed, phase};
    }
    if (used != overrides.size()) throw InputError(path + ": phase given for a pair that is not an edge");
    return MixedGraph(graph.vertex_count(), std::move(edges));
}

MixedGraph apply_theta(const MixedGraph& graph, const std::optional<std::string>& spec) {
    if (!spec) return graph;
    if (*spec == "zero") {
        std::vector<Edge> edges = graph.edges();
        for (Edge& e : edges) e.phase = 0.0;
        return MixedGraph(graph.vertex_count(), std::move(edges));
    }
    if (spec->rfind("file:", 0) == 0) return apply_phase_file(graph, spec->substr(5));
    if (spec->rfind("random:", 0) == 0) {
        auto parts = split(*spec, ':');
        if (parts.size() != 3 && parts.size() != 4) {
            throw InputError("--theta random expects random:SEED:FRACTION[:zero]");
        }
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), seed);
        if (parts[1].empty() || ec != std::errc() || ptr != parts[1].data() + parts[1].size()) {
            throw InputError("bad seed in --theta '" + *spec + "'");
        }
        double fraction = parse_double(parts[2], "--theta");
        PhaseMode mode = PhaseMode::Uniform;
        if (parts.size() == 4) {
            if (parts[3] != "zero") throw InputError("--theta random accepts only ':zero' as a suffix");
            mode = PhaseMode::Zero;
        }
        return orient_random(graph, fraction, mode, seed);
    }
    throw InputError("unknown --theta source '" + *spec + "'");
}

MixedGraph load_graph(const RunConfig& config) {
    if (config.graph_file.has_value() == config.generator.has_value()) {
        throw InputError("give exactly one of --graph FILE or --generate SPEC");
    }
    MixedGraph g = config.graph_file ? parse_mixed_graph(read_file(*config.graph_file))
                                     : generate(*config.generator, config.seed);
    return apply_theta(g, config.theta);
}

double tolerance_or(const RunConfig& config, double fallback) { return config.tolerance.value_or(fallback); }

struct Report {
    Json body = Json::object();
    Json checks = Json::array();
    bool failed = false;
    std::string table;  // CSV body for matrices and density

    void check(const std::string& name, double deviation, double tolerance) {
        bool passed = deviation <= tolerance;
        checks.push_back({{"name", name}, {"deviation", deviation}, {"tolerance", tolerance}, {"passed", passed}});
        if (!passed) failed = true;
    }
    void check(const IdentityCheck& c) { check(c.name, c.deviation, c.tolerance); }
};

Json graph_summary(const MixedGraph& g) {
    GraphStats s = stats(g);
    Json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["arcs"] = g.arc_count();
    j["regular_degree"] = s.regular_degree ? Json(*s.regular_degree) : Json(nullptr);
    j["min_degree"] = s.min_degree;
    j["max_degree"] = g.max_degree();
    j["connected"] = s.connected;
    j["girth"] = s.girth ? Json(*s.girth) : Json("inf");
    int directed = 0;
    for (const Edge& e : g.edges()) directed += e.kind == EdgeKind::Directed ? 1 : 0;
    j["directed_edges"] = directed;
    j["zero_phases"] = g.zero_phases();
    Json warnings = Json::array();
    if (!s.connected) warnings.push_back("disconnected");
    j["warnings"] = warnings;
    return j;
}

Json matrix_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::string format_number(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

std::string complex_cell(Complex z) {
    std::string im = format_number(z.imag());
    if (im.front() != '-') im = "+" + im;
    return format_number(z.real()) + im + "j";
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        }
    } else if (j.is_array()) {
        if (j.size() == 2 && j[0].is_number() && j[1].is_number()) {
            rows.emplace_back(prefix, complex_cell({j[0].get<double>(), j[1].get<double>()}));
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

std::string density_csv(const DensityReport& r) {
    std::ostringstream s;
    s << "bin_center";
    for (const DensitySample& sample : r.samples) s << ",empirical_n" << sample.n;
    s << ",reference\n";
    for (std::size_t b = 0; b < r.reference.size(); ++b) {
        s << format_number(0.5 * (r.bin_edges[b] + r.bin_edges[b + 1]));
        for (const DensitySample& sample : r.samples) s << "," << format_number(sample.histogram[b]);
        s << "," << format_number(r.reference[b]) << "\n";
    }
    return s.str();
}

// --- subcommands ---------------------------------------------------------

void cmd_info(const RunConfig&, const MixedGraph& g, Report& r) {
    r.body["graph"] = graph_summary(g);
    r.body["canonical"] = serialize(g);
}

void cmd_matrices(const RunConfig& config, const MixedGraph& g, Report& r) {
    OperatorBundle bundle = build_bundle(g);
    ComplexMatrix m = named_matrix(g, bundle, config.matrix);
    r.body["name"] = config.matrix;
    r.body["rows"] = m.rows();
    r.body["cols"] = m.cols();
    r.body["entries"] = matrix_json(m);
    std::ostringstream csv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) csv << (j ? "," : "") << complex_cell(m(i, j));
        csv << "\n";
    }
    r.table = csv.str();
}

void cmd_spectrum(const RunConfig& config, const MixedGraph& g, Report& r) {
    OperatorBundle bundle = build_bundle(g);
    r.body["graph"] = graph_summary(g);
    r.body["H_theta"] = to_json(linalg::eigenvalues(bundle.H_theta, true).eigenvalues);
    r.body["H_tilde"] = to_json(linalg::eigenvalues(bundle.H_tilde, true).eigenvalues);
    r.body["A"] = to_json(linalg::eigenvalues(bundle.A, true).eigenvalues);
    r.body["U_theta"] = to_json(linalg::sorted(linalg::eigenvalues(bundle.U_theta, false).eigenvalues));
    if (g.connected()) {
        const double tol = tolerance_or(config, 1e-7);
        SpectralMapping mapping = spectrum_via_mapping(g, bundle, std::numeric_limits<double>::infinity());
        r.body["mapped"] = to_json(linalg::sorted(mapping.mapped));
        r.body["signed_padding"] = mapping.signed_padding;
        r.body["max_distance"] = mapping.max_distance;
        r.check("spectral mapping", mapping.max_distance, tol);
    }
    if (g.regular_degree()) r.check(verify_hermitian_bound(g, bundle, tolerance_or(config, 1e-8)));
}

void cmd_zeta(const RunConfig& config, const MixedGraph& g, Report& r) {
    if (!config.at && !config.series && !config.poles) throw InputError("zeta needs --at, --series or --poles");
    OperatorBundle bundle = build_bundle(g);
    if (config.at) {
        const Complex u = *config.at;
        DeterminantCheck c = check_determinant_identity(g, bundle, u, tolerance_or(config, kDefaultTolerance));
        Json at;
        at["u"] = to_json(u);
        at["determinant_form"] = to_json(c.direct);
        at["reduced_form"] = to_json(c.reduced.normalized);
        at["degree_form"] = to_json(c.reduced.degree_form);
        at["direct_error"] = c.direct_error;
        at["forms_error"] = c.forms_error;
        if (g.regular_degree() && g.connected()) {
            Complex product = regular_product_form(g, bundle, u);
            at["product_form"] = to_json(product);
            r.check("product form", linalg::scaled_error(product, c.direct), tolerance_or(config, kDefaultTolerance));
        }
        if (std::abs(u) < 0.98) {
            ZetaSeries s = series_coefficients(bundle, 200);
            at["zeta_from_series"] = to_json(zeta_from_series(s, u));
        }
        r.body["at"] = at;
        r.check("determinant identity", c.direct_error, tolerance_or(config, kDefaultTolerance));
        r.check("reduced forms agree", c.forms_error, tolerance_or(config, kDefaultTolerance) / 10.0);
    }
    if (config.series) {
        const int order = *config.series;
        if (order < 1) throw InputError("--series needs L >= 1");
        ZetaSeries trace = series_coefficients(bundle, order);
        ZetaSeries euler = euler_log_coefficients(g, order);
        Json rows = Json::array();
        double worst = 0.0;
        for (int k = 1; k <= order; ++k) {
            double dev = linalg::scaled_error(trace.n(k), euler.n(k));
            worst = std::max(worst, dev);
            rows.push_back({{"k", k}, {"trace", to_json(trace.n(k))}, {"euler", to_json(euler.n(k))}});
        }
        r.body["series"] = rows;
        r.check("N_k trace vs Euler product", worst, tolerance_or(config, kDefaultTolerance));
    }
    if (config.poles) {
        PoleSet poles = poles_regular(g, bundle, tolerance_or(config, 1e-9));
        Json list = Json::array();
        for (const Pole& p : poles.poles) list.push_back({{"value", to_json(p.value)}, {"multiplicity", p.multiplicity}});
        r.body["poles"] = {{"poles", list}, {"total_multiplicity", poles.total_multiplicity()}};
        r.check("pole multiplicity = 2m", std::abs(poles.total_multiplicity() - g.arc_count()), 0.0);
    }
}

void cmd_cycles(const RunConfig& config, const MixedGraph& g, Report& r) {
    const int length = config.max_length.value_or(6);
    auto classes = enumerate_prime_classes(g, length, config.reduced);
    Json list = Json::array();
    for (const PrimeCycleClass& c : classes) {
        list.push_back({{"canonical_arcs", c.canonical_arcs},
                        {"length", c.length},
                        {"weight", to_json(c.weight)},
                        {"reduced", c.reduced}});
    }
    r.body["max_length"] = length;
    r.body["reduced_only"] = config.reduced;
    r.body["count"] = classes.size();
    r.body["classes"] = list;
}

TraceTheorem parse_theorem(const std::string& s) {
    if (s == "11" || s == "twisted") return TraceTheorem::Twisted;
    if (s == "7" || s == "untwisted") return TraceTheorem::Untwisted;
    if (s == "2" || s == "ahumada") return TraceTheorem::Ahumada;
    throw InputError("--theorem must be 11, 7 or 2 (twisted, untwisted, ahumada)");
}

void cmd_trace_check(const RunConfig& config, const MixedGraph& g, Report& r) {
    TraceTheorem theorem = parse_theorem(config.theorem);
    TestFunction h = TestFunction::cosine_polynomial(parse_coefficients(config.h));
    const int length = config.max_length.value_or(std::max(h.degree(), 1));
    if (length < 1) throw InputError("--max-length must be >= 1");
    OperatorBundle bundle = build_bundle(g);
    const double tol = tolerance_or(config, 1e-8);
    TraceFormulaReport t;
    switch (theorem) {
        case TraceTheorem::Twisted: t = evaluate_twisted_trace(g, bundle, h, length, tol); break;
        case TraceTheorem::Untwisted: t = evaluate_untwisted_trace(g, bundle, h, length, tol); break;
        case TraceTheorem::Ahumada: t = evaluate_ahumada(g, bundle, h, length); break;
    }
    r.body["theorem"] = to_string(t.theorem);
    r.body["h"] = to_json(h.coefficients());
    r.body["lhs"] = to_json(t.lhs);
    r.body["lhs_all"] = t.lhs_all ? to_json(*t.lhs_all) : Json(nullptr);
    r.body["identity_term"] = to_json(t.identity_term);
    r.body["cycle_term"] = to_json(t.cycle_term);
    r.body["rhs_printed"] = to_json(t.rhs_printed);
    r.body["oracle_value"] = to_json(t.oracle_value);
    r.body["residual_printed"] = to_json(t.residual_printed);
    r.body["residual_oracle"] = to_json(t.residual_oracle);
    r.body["truncation_length"] = t.truncation_length;
    r.body["truncation_bound"] = t.truncation_bound;
    r.body["classes_used"] = t.classes_used;
    if (theorem != TraceTheorem::Ahumada) {
        r.check("oracle trace identity", std::abs(t.residual_oracle), tol * (1.0 + std::abs(t.lhs)));
    }
}

void cmd_ihara(const RunConfig& config, const MixedGraph& g, Report& r) {
    ComplexMatrix edge = ihara_edge_matrix(g);
    r.check("B - J0 = positive support of U^t", 0.0, 0.0);
    r.body["graph"] = graph_summary(g);
    r.body["edge_matrix_size"] = edge.rows();
    std::vector<Complex> points;
    if (config.at) {
        points.push_back(*config.at);
    } else {
        points = {0.1, 0.2, 0.3};
    }
    Json evaluations = Json::array();
    for (Complex u : points) {
        IharaEvaluation e = ihara_reciprocal(g, u, tolerance_or(config, 1e-8));
        Json j;
        j["u"] = to_json(u);
        j["edge_matrix_form"] = to_json(e.edge_matrix_form);
        j["vertex_determinant"] = e.vertex_determinant ? to_json(*e.vertex_determinant) : Json(nullptr);
        j["vertex_product"] = e.vertex_product ? to_json(*e.vertex_product) : Json(nullptr);
        evaluations.push_back(j);
    }
    r.body["evaluations"] = evaluations;
}

void cmd_density(const RunConfig& config, Report& r) {
    DensityReport d = density_experiment(config.q, config.sizes, config.bin_width, config.seed);
    r.body["q"] = d.q;
    r.body["bin_width"] = d.bin_width;
    r.body["seed"] = config.seed;
    r.body["bin_edges"] = d.bin_edges;
    r.body["reference"] = d.reference;
    Json samples = Json::array();
    for (const DensitySample& s : d.samples) {
        samples.push_back({{"n", s.n},
                           {"seed", s.seed},
                           {"girth", s.girth ? Json(*s.girth) : Json("inf")},
                           {"l1_distance", s.l1_distance},
                           {"spectral_radius", s.spectral_radius},
                           {"histogram", s.histogram}});
    }
    r.body["samples"] = samples;
    r.table = density_csv(d);
    if (config.csv_path) {
        std::ofstream out(*config.csv_path, std::ios::binary);
        if (!out) throw InputError("cannot write '" + *config.csv_path + "'");
        out << r.table;
    }
}

void cmd_fuzz(const RunConfig& config, Report& r) {
    FuzzOptions options;
    if (config.tolerance) options.tolerance_override = *config.tolerance;
    if (config.max_length) options.max_walk_length = *config.max_length;
    FuzzSummary s = fuzz_identities(config.count, config.seed, options);
    r.body["cases"] = s.cases;
    r.body["passed"] = s.passed;
    r.body["failed"] = s.failed;
    for (const CheckTally& t : s.checks) {
        r.checks.push_back({{"name", t.name},
                            {"worst", t.worst},
                            {"tolerance", t.tolerance},
                            {"evaluated", t.evaluated},
                            {"failed", t.failed}});
    }
    r.body["failures"] = s.failures;
    if (!s.ok()) r.failed = true;
}

void emit(const RunConfig& config, const Report& r, std::ostream& out) {
    Json doc;
    doc["command"] = config.subcommand;
    for (auto it = r.body.begin(); it != r.body.end(); ++it) doc[it.key()] = it.value();
    doc["checks"] = r.checks;
    doc["status"] = r.failed ? "fail" : "pass";

    std::ostringstream text;
    if (config.format == Format::Json) {
        text << doc.dump(2) << "\n";
    } else if (config.format == Format::Csv && !r.table.empty()) {
        text << r.table;
    } else {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(doc, "", rows);
        for (const auto& [key, value] : rows) {
            if (config.format == Format::Csv) {
                text << key << "," << value << "\n";
            } else {
                text << key << " = " << value << "\n";
            }
        }
    }
    if (config.out_path) {
        std::ofstream file(*config.out_path, std::ios::binary);
        if (!file) throw InputError("cannot write '" + *config.out_path + "'");
        file << text.str();
    } else {
        out << text.str();
    }
}

}  // namespace

Complex parse_complex(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() == 1) return {parse_double(parts[0], "complex value"), 0.0};
    if (parts.size() == 2) return {parse_double(parts[0], "complex value"), parse_double(parts[1], "complex value")};
    throw InputError("expected 're,im' but got '" + text + "'");
}

std::vector<Complex> parse_coefficients(const std::string& text) {
    std::vector<Complex> coefficients;
    for (const std::string& part : split(text, ',')) coefficients.emplace_back(parse_double(part, "--h"));
    if (coefficients.empty()) throw InputError("--h needs at least one coefficient");
    return coefficients;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.tolerance && !(*config.tolerance > 0.0)) throw InputError("--tolerance must be positive");
        if (config.max_length && *config.max_length < 1) throw InputError("--max-length must be >= 1");

        Report report;
        const std::string& cmd = config.subcommand;
        if (cmd == "density") {
            cmd_density(config, report);
        } else if (cmd == "fuzz") {
            cmd_fuzz(config, report);
        } else {
            MixedGraph g = load_graph(config);
            if (!g.connected()) err << "warning: graph is disconnected\n";
            if (cmd == "info") cmd_info(config, g, report);
            else if (cmd == "matrices") cmd_matrices(config, g, report);
            else if (cmd == "spectrum") cmd_spectrum(config, g, report);
            else if (cmd == "zeta") cmd_zeta(config, g, report);
            else if (cmd == "cycles") cmd_cycles(config, g, report);
            else if (cmd == "trace-check") cmd_trace_check(config, g, report);
            else if (cmd == "ihara") cmd_ihara(config, g, report);
            else throw InputError("unknown subcommand '" + cmd + "'");
        }
        emit(config, report, out);
        if (report.failed) {
            err << "identity check failed\n";
            return 1;
        }
        return 0;
    } catch (const IdentityViolation& e) {
        err << "identity violation: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted Grover zeta functions of mixed graphs: determinant identities, spectra, "
                 "Euler products and trace formulas.",
                 "grover-zeta"};
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "json";
    std::string at;
    std::string sizes;

    app.add_option("--graph", config.graph_file, "Graph file in the mixedgraph text format");
    app.add_option("--generate", config.generator,
                   "Generator: complete:N, cycle:N, path:N, petersen, circulant:N:S1,S2, random_regular:N:D[:SEED]");
    app.add_option("--theta", config.theta, "Phases: zero | random:SEED:FRACTION[:zero] | file:PATH");
    app.add_option("--tolerance", config.tolerance, "Override the default tolerance of asserted checks");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", config.out_path, "Write the report to PATH instead of stdout");
    app.add_option("--seed", config.seed, "Seed for generators and experiments");

    app.add_subcommand("info", "Graph statistics: degrees, connectivity, girth, orientation");

    auto* matrices = app.add_subcommand(
        "matrices", "Dump A, D, T, K, C, S, U, H, Htilde, B or Grover; U is S_theta C and H_tilde = K S_theta K*");
    matrices->add_option("--name", config.matrix, "Matrix name")->capture_default_str();

    app.add_subcommand("spectrum",
                       "Spectra of H_theta, H_tilde, A and U_theta; checks the spectral mapping "
                       "lambda -> lambda +- i sqrt(1 - lambda^2) and the bound |Spec(H_theta)| <= q+1");

    auto* zeta = app.add_subcommand(
        "zeta", "Zeta function: determinant identity det(I - uU_theta) = (1-u^2)^{m-n} det((1+u^2)I - 2u H_tilde), "
                "trace series N_k against the Euler product, and poles of regular graphs");
    zeta->add_option("--at", at, "Evaluate at u = re,im");
    zeta->add_option("--series", config.series, "Print N_1..N_L from traces and from prime cycles");
    zeta->add_flag("--poles", config.poles, "Pole set of a connected regular graph");

    auto* cycles = app.add_subcommand("cycles", "Prime cycle classes with twisted weights (Euler product factors)");
    cycles->add_option("--max-length", config.max_length, "Longest class to enumerate (default 6)");
    cycles->add_flag("--reduced", config.reduced, "Reduced classes only (no backtracking, no tails)");

    auto* trace = app.add_subcommand(
        "trace-check", "Trace formulas on regular graphs: 11 = twisted Grover trace formula, 7 = untwisted Grover "
                       "trace formula, 2 = Ahumada's formula for the Ihara zeta; the trace oracle is asserted, "
                       "the printed right-hand side is reported");
    trace->set_help_flag("--help", "Print this help message and exit");  // --h is the test function
    trace->add_option("--theorem", config.theorem, "11 | 7 | 2 (or twisted | untwisted | ahumada)")
        ->capture_default_str();
    trace->add_option("--h", config.h, "Cosine coefficients a0,a1,...,aM of h(t) = sum a_k cos(kt)")
        ->capture_default_str();
    trace->add_option("--max-length", config.max_length, "Truncation length L (default max(M, 1))");

    auto* ihara = app.add_subcommand(
        "ihara", "Ihara zeta: positive support of the transposed Grover matrix equals B - J0, and Ihara's "
                 "determinant formula det(I - uB + uJ0) = (1-u^2)^{m-n} det(I - uA + qu^2 I) on regular graphs");
    ihara->add_option("--at", at, "Evaluate at u = re,im (default 0.1, 0.2, 0.3)");

    auto* density = app.add_subcommand(
        "density", "Eigenvalue histograms of random (q+1)-regular graphs against McKay's limiting density");
    density->add_option("--q", config.q, "q, so graphs are (q+1)-regular")->capture_default_str();
    density->add_option("--sizes", sizes, "Comma-separated vertex counts (default 100,1000)");
    density->add_option("--bin-width", config.bin_width, "Histogram bin width")->capture_default_str();
    density->add_option("--csv", config.csv_path, "Also write bin_center,empirical...,reference to PATH");

    auto* fuzz = app.add_subcommand(
        "fuzz", "Random mixed graphs through every identity: determinant identity, K S K* factorization, "
                "unitarity, spectral mapping, N_k by traces, brute force and Euler product, spectral bound");
    fuzz->add_option("--count", config.count, "Number of random graphs")->capture_default_str();
    fuzz->add_option("--max-length", config.max_length, "Longest walk length cross-checked (default 6)");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        // Subcommand help is reported through the same path.
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;
    try {
        if (!at.empty()) config.at = parse_complex(at);
        if (!sizes.empty()) {
            config.sizes.clear();
            for (const std::string& s : split(sizes, ',')) {
                double v = parse_double(s, "--sizes");
                if (v != std::floor(v) || v < 1) throw InputError("--sizes needs positive integers");
                config.sizes.push_back(static_cast<int>(v));
            }
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return run(config, out, err);
}

}  // namespace gzeta::cli
