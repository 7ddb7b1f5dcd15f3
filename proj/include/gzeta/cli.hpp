#pragma once

#include "gzeta/linalg.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gzeta::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string subcommand;

    // Exactly one graph source.
    std::optional<std::string> graph_file;
    std::optional<std::string> generator;

    // zero | random:SEED:FRACTION[:zero] | file:PATH; unset keeps the graph's own phases.
    std::optional<std::string> theta;
    std::optional<double> tolerance;
    Format format = Format::Json;
    std::optional<std::string> out_path;
    std::uint64_t seed = 0;

    // Truncation length for cycle sums and enumeration.
    std::optional<int> max_length;

    std::string matrix = "U";
    std::optional<Complex> at;
    std::optional<int> series;
    bool poles = false;
    bool reduced = false;
    std::string theorem = "11";
    std::string h = "1";
    int q = 2;
    std::vector<int> sizes{100, 1000};
    double bin_width = 0.25;
    std::optional<std::string> csv_path;
    int count = 50;
};

// Validates the config, dispatches, writes the report to out (or out_path).
// Returns 0 when every asserted check passes, 1 on an identity failure and
// 2 on bad input. Diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv with CLI11 and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

Complex parse_complex(const std::string& text);
std::vector<Complex> parse_coefficients(const std::string& text);

}  // namespace gzeta::cli
