#include "cvbell/correlators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace cvbell {

namespace {

// Per-mode pieces of the closed form. With z = x + iy displacing a mode
// whose state parameter is p, the correlator is
//
//   N^2 [ 2 e^{-g} cos(theta) - e^{-h+} - e^{-h-} ],
//
// g = sum |z|^2 / 2, theta = sum 2 p x, h+- = sum (x^2 + (y +- 2p)^2) / 2.
// The shifted exponents are accumulated from expanded squares so no
// complex intermediate can cancel catastrophically at large p.
struct ModeSum {
    double g = 0.0;
    double theta = 0.0;
    double m = 0.0;  // sum y p; h+- = g + 2 s +- 2 m
    double h_plus = 0.0;
    double h_minus = 0.0;

    void add(Complex z, double p) {
        const double x = z.real();
        const double y = z.imag();
        g += 0.5 * (x * x + y * y);
        theta += 2.0 * p * x;
        m += y * p;
        const double yp = y + 2.0 * p;
        const double ym = y - 2.0 * p;
        h_plus += 0.5 * (x * x + yp * yp);
        h_minus += 0.5 * (x * x + ym * ym);
    }

    // Equivalent rearrangement of the bracket above,
    //
    //   value = e^{-g} (Q - 2 sin^2(theta/2)) / Q - cross / (2 Q),
    //   cross = e^{-min(h+,h-)} (1 - e^{-2|m|})^2,
    //
    // with Q = 1 - e^{-2s} = 1/(2 N^2). Every exponent is <= 0 and the
    // at-zero cancellation 2 - 2e^{-2s} never happens explicitly, so
    // value(0, 0) == 1 holds to machine precision for any valid state.
    double value(double s) const {
        const double q = -std::expm1(-2.0 * s);
        const double st = std::sin(0.5 * theta);
        const double em = std::expm1(-2.0 * std::abs(m));
        const double cross = std::exp(-std::min(h_plus, h_minus)) * em * em;
        return std::exp(-g) * (q - 2.0 * st * st) / q - cross / (2.0 * q);
    }
};

}  // namespace

double correlator2(Complex z, Complex w, const BipartiteState& state) {
    ModeSum ms;
    ms.add(z, state.eta);
    ms.add(w, state.sigma);
    return ms.value(state.eta * state.eta + state.sigma * state.sigma);
}

double correlator3(Complex z, Complex w, Complex zeta, const TripartiteState& state) {
    ModeSum ms;
    ms.add(z, state.eta);
    ms.add(w, state.sigma);
    ms.add(zeta, state.tau);
    return ms.value(state.eta * state.eta + state.sigma * state.sigma +
                    state.tau * state.tau);
}

CorrelatorValue bell_chsh(const BellSettings& s) {
    const double value = correlator2(s.z, s.w, s.state) +
                         correlator2(s.z_prime, s.w, s.state) +
                         correlator2(s.z, s.w_prime, s.state) -
                         correlator2(s.z_prime, s.w_prime, s.state);
    return {value, classify(value, bell_classical_bound, bell_quantum_bound),
            bell_classical_bound, bell_quantum_bound};
}

CorrelatorValue mermin3(const MerminSettings& s) {
    const double value = correlator3(s.z_prime, s.w, s.zeta, s.state) +
                         correlator3(s.z, s.w_prime, s.zeta, s.state) +
                         correlator3(s.z, s.w, s.zeta_prime, s.state) -
                         correlator3(s.z_prime, s.w_prime, s.zeta_prime, s.state);
    return {value, classify(value, mermin_classical_bound, mermin_quantum_bound),
            mermin_classical_bound, mermin_quantum_bound};
}

Violation classify(double value, double classical_bound, double quantum_bound) {
    assert(classical_bound > 0.0 && classical_bound < quantum_bound);
    constexpr double tol = 1e-9;
    const double mag = std::abs(value);
    if (mag <= classical_bound + tol) return Violation::classical;
    if (mag <= quantum_bound + tol) return Violation::violation;
    return Violation::above_quantum_bound;
}

BellSettings bell_paper_settings(double eta, double sigma) {
    return {{0.01, 0.12211},
            {0.01, -0.67795},
            {0.001, 0.122},
            {0.01, -0.67826},
            make_bipartite(eta, sigma)};
}

MerminSettings mermin_paper_settings() { return mermin_paper_settings(38.8525, 36.5831); }

MerminSettings mermin_paper_settings(double eta, double sigma) {
    return {{0.020091, -0.00055757},
            {0.040244, -0.00114505},
            {0.015207, -0.0000692535},
            {0.036766, -0.00036440},
            {0.0247087, -0.00050390},
            {0.0437431, -0.00087464},
            make_tripartite(eta, sigma, 41.2201)};
}

}  // namespace cvbell
