#pragma once

#include <stdexcept>

namespace cvbell {

/// Thrown when eta^2 + sigma^2 (+ tau^2) is below the degeneracy
/// threshold: the superposition collapses to the zero vector and the
/// normalization is meaningless.
struct DegenerateState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Squared-parameter threshold below which a state counts as degenerate.
inline constexpr double k_degenerate_eps = 1e-12;

/// N (D_a(i eta) D_b(i sigma) - D_a(-i eta) D_b(-i sigma)) |0>,
/// with N = 2^{-1/2} (1 - e^{-2(eta^2+sigma^2)})^{-1/2} cached in `norm`.
struct BipartiteState {
    double eta;
    double sigma;
    double norm;
};

/// Three-mode analogue with parameters (eta, sigma, tau).
struct TripartiteState {
    double eta;
    double sigma;
    double tau;
    double norm;
};

BipartiteState make_bipartite(double eta, double sigma);
TripartiteState make_tripartite(double eta, double sigma, double tau);

}  // namespace cvbell
