#include "cvbell/states.hpp"

#include <cmath>
#include <string>

namespace cvbell {

namespace {

// 1 - e^{-2 s}, computed through expm1 so the value stays accurate all
// the way down to the degeneracy threshold.
double depletion(double s) { return -std::expm1(-2.0 * s); }

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

BipartiteState make_bipartite(double eta, double sigma) {
    check_finite(eta, "eta");
    check_finite(sigma, "sigma");
    const double s = eta * eta + sigma * sigma;
    if (s <= k_degenerate_eps) {
        throw DegenerateState("state parameters eta^2 + sigma^2 <= 1e-12: zero vector");
    }
    return {eta, sigma, 1.0 / std::sqrt(2.0 * depletion(s))};
}

TripartiteState make_tripartite(double eta, double sigma, double tau) {
    check_finite(eta, "eta");
    check_finite(sigma, "sigma");
    check_finite(tau, "tau");
    const double s = eta * eta + sigma * sigma + tau * tau;
    if (s <= k_degenerate_eps) {
        throw DegenerateState("state parameters eta^2 + sigma^2 + tau^2 <= 1e-12: zero vector");
    }
    return {eta, sigma, tau, 1.0 / std::sqrt(2.0 * depletion(s))};
}

}  // namespace cvbell
