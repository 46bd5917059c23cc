#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace cvbell {

using Complex = std::complex<double>;

/// Reduce an angle to the canonical interval (-pi, pi].
inline double wrap_angle(double phase) {
    double r = std::remainder(phase, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
    return r;
}

/// Label of a scalar multiple of a displacement operator:
/// e^{i*phase} D(amplitude). Displacement products stay in this set,
/// so the Weyl algebra closes over labels with no matrices involved.
struct DisplacementLabel {
    Complex amplitude{0.0, 0.0};
    double phase = 0.0;  // radians, kept in (-pi, pi]
};

inline DisplacementLabel make_label(Complex amplitude, double phase = 0.0) {
    return {amplitude, wrap_angle(phase)};
}

/// Product law D(z) D(z') = e^{(z z'* - z* z')/2} D(z + z').
/// The exponent is purely imaginary; its angle Im(z z'*) folds into `phase`.
inline DisplacementLabel compose(const DisplacementLabel& l, const DisplacementLabel& r) {
    const double twist = std::imag(l.amplitude * std::conj(r.amplitude));
    return {l.amplitude + r.amplitude, wrap_angle(l.phase + r.phase + twist)};
}

inline DisplacementLabel inverse(const DisplacementLabel& l) {
    return {-l.amplitude, wrap_angle(-l.phase)};
}

/// The three conjugation patterns with D(i*eta):
///   dag_pos:  D(i eta)^dag D(z) D(i eta)  =  e^{-2i eta Re z} D(z)
///   pos_neg:  D(i eta)     D(z) D(-i eta) =  e^{+2i eta Re z} D(z)
///   pos_pos:  D(i eta)     D(z) D(i eta)  =  D(z + 2i eta)
enum class Sandwich { dag_pos, pos_neg, pos_pos };

inline DisplacementLabel conjugate_sandwich(Complex z, double eta, Sandwich kind) {
    const Complex ieta{0.0, eta};
    DisplacementLabel left, right;
    switch (kind) {
        case Sandwich::dag_pos:
            left = make_label(-ieta);  // D(i eta)^dag = D(-i eta)
            right = make_label(ieta);
            break;
        case Sandwich::pos_neg:
            left = make_label(ieta);
            right = make_label(-ieta);
            break;
        case Sandwich::pos_pos:
            left = make_label(ieta);
            right = make_label(ieta);
            break;
    }
    return compose(compose(left, make_label(z)), right);
}

/// <0| D(z) |0> = e^{-|z|^2 / 2}; strictly positive, at most 1.
inline double vacuum_overlap(Complex z) {
    const double x = z.real(), y = z.imag();
    return std::exp(-0.5 * (x * x + y * y));
}

}  // namespace cvbell
