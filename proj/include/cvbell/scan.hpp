#pragma once

#include <Eigen/Dense>

#include "cvbell/correlators.hpp"

namespace cvbell {

/// Inclusive axis grid: count points from lo to hi. A single-point axis
/// (count == 1) pins the value at lo and requires lo == hi.
struct AxisRange {
    double lo;
    double hi;
    int count;
};

/// Surface scan over the state parameters (eta, sigma) with all operator
/// amplitudes held fixed; zeta, zeta_prime and tau only matter for
/// Kind::mermin.
struct ScanSpec {
    AxisRange eta_range;
    AxisRange sigma_range;
    Complex z, z_prime, w, w_prime;
    Complex zeta, zeta_prime;
    double tau = 0.0;
};

struct ScanResult {
    ScanSpec spec;
    Kind kind;
    Eigen::ArrayXXd values;  // eta index x sigma index; NaN marks a degenerate cell
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> violated;
    bool has_max = false;  // false when every cell is degenerate
    int argmax_eta = 0;
    int argmax_sigma = 0;
    double max_value = 0.0;
};

double axis_point(const AxisRange& r, int i);

/// Evaluates the full grid. Deterministic: the result is identical for
/// any thread count. Throws std::invalid_argument on a malformed spec.
ScanResult scan(const ScanSpec& spec, Kind kind, int threads = 1);

}  // namespace cvbell
