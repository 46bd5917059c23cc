#pragma once

#include "cvbell/states.hpp"
#include "cvbell/weyl.hpp"

namespace cvbell {

enum class Kind { bell, mermin };

enum class Violation { classical, violation, above_quantum_bound };

inline constexpr double bell_classical_bound = 2.0;
inline constexpr double bell_quantum_bound = 2.8284271247461903;  // 2 sqrt 2
inline constexpr double mermin_classical_bound = 2.0;
inline constexpr double mermin_quantum_bound = 4.0;

struct CorrelatorValue {
    double value;
    Violation classification;
    double bound_classical;
    double bound_quantum;
};

/// Bell-CHSH operator settings: A = D_a(z), A' = D_a(z'),
/// B = D_b(w), B' = D_b(w').
struct BellSettings {
    Complex z, z_prime, w, w_prime;
    BipartiteState state;
};

/// Mermin-3 settings; zeta, zeta_prime drive the C-mode operators.
struct MerminSettings {
    Complex z, z_prime, w, w_prime, zeta, zeta_prime;
    TripartiteState state;
};

/// <psi| D_a(z) D_b(w) |psi> in closed form; always real, in [-1, 1].
double correlator2(Complex z, Complex w, const BipartiteState& state);

/// Three-mode analogue <psi| D_a(z) D_b(w) D_c(zeta) |psi>.
double correlator3(Complex z, Complex w, Complex zeta, const TripartiteState& state);

/// <C> = c2(z,w) + c2(z',w) + c2(z,w') - c2(z',w'), bounds (2, 2 sqrt 2).
CorrelatorValue bell_chsh(const BellSettings& s);

/// <M3> = c3(z',w,zeta) + c3(z,w',zeta) + c3(z,w,zeta') - c3(z',w',zeta'),
/// bounds (2, 4). The primed slot cycles through the three modes; the
/// all-primed term enters with a minus sign.
CorrelatorValue mermin3(const MerminSettings& s);

/// above_quantum_bound is a diagnostic outcome: it flags a numerical or
/// logic failure, never a physical result.
Violation classify(double value, double classical_bound, double quantum_bound);

/// Published Bell operator amplitudes; the state is the caller's choice.
BellSettings bell_paper_settings(double eta, double sigma);

/// Published Mermin parameter point, state included.
MerminSettings mermin_paper_settings();

/// Same amplitudes and tau, state (eta, sigma) free (used for surface scans).
MerminSettings mermin_paper_settings(double eta, double sigma);

}  // namespace cvbell
