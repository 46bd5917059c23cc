#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cvbell/optimize.hpp"
#include "cvbell/scan.hpp"

namespace cvbell {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Accepts "x+yi" / "x-yi" / "x" / "yi" / "i" with usual float syntax.
/// Throws ParseError with the offending character position.
Complex parse_complex(const std::string& text);

struct OptimizeBlock {
    int starts = 64;
    std::optional<Eigen::VectorXd> lo;  // absent: default bounds
    std::optional<Eigen::VectorXd> hi;
    std::optional<Eigen::VectorXd> warm_start;
};

struct ScanBlock {
    AxisRange eta_range{0.05, 60.0, 240};
    AxisRange sigma_range{0.05, 60.0, 240};
};

/// One batch-run description. Complex values in JSON may be written as
/// [re, im] pairs or "x+yi" strings; serialization always emits pairs,
/// so write-then-read round-trips identically.
struct RunConfig {
    Kind kind = Kind::bell;
    Complex z, z_prime, w, w_prime;
    Complex zeta, zeta_prime;
    double eta = 1.0;
    double sigma = 1.0;
    double tau = 1.0;
    std::optional<ScanBlock> scan;
    std::optional<OptimizeBlock> optimize;
    std::string output_path;
    int rng_seed = 0;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Built-in parameter sets from the published Bell and Mermin analyses.
RunConfig preset_config(const std::string& name);  // "bell-paper" | "mermin-paper"

std::string kind_name(Kind kind);
std::string violation_name(Violation v);

}  // namespace cvbell
