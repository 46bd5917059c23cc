#pragma once

#include <optional>

#include <Eigen/Dense>

#include "cvbell/correlators.hpp"

namespace cvbell {

/// Per-coordinate box bounds for the optimizer parameter vector.
struct ParameterBounds {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
};

/// Parameter vector layout:
///   bell:   x, y, x', y', u, v, u', v', eta, sigma            (10)
///   mermin: ... plus Re/Im of zeta, zeta' and eta, sigma, tau (15)
int parameter_count(Kind kind);

/// |Re amplitude| <= 0.1, |Im amplitude| <= 1, state parameters in
/// [0.05, 60]; brackets both published optima.
ParameterBounds default_bounds(Kind kind);

/// Correlator value at a packed parameter vector (degenerate states
/// yield -infinity so the maximizer simply avoids them).
double evaluate_parameters(Kind kind, const Eigen::VectorXd& p);

struct OptimResult {
    double best_value;
    Eigen::VectorXd best_params;
    long n_evaluations;
    int seed;
    bool converged;  // the winning start hit the simplex tolerance
};

/// Multi-start Nelder-Mead ascent over the box. Starts come from a
/// Halton sequence offset by rng_seed; an optional warm start joins as
/// an extra start and the incumbent gets one polish restart at the end.
/// Deterministic for fixed (bounds, starts, rng_seed, warm_start)
/// regardless of `threads`.
OptimResult maximize(Kind kind, const ParameterBounds& bounds, int starts,
                     int rng_seed,
                     const std::optional<Eigen::VectorXd>& warm_start = std::nullopt,
                     int threads = 1);

}  // namespace cvbell
