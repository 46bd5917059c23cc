#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "cvbell/states.hpp"
#include "cvbell/weyl.hpp"

namespace cvbell {

struct InvalidDim : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense operator on a single truncated number basis.
struct FockOperator {
    int dim;
    Eigen::MatrixXcd entries;
};

/// State vector over 2 or 3 modes of equal per-mode dimension;
/// entries are ordered with the first mode slowest.
struct FockVector {
    int dim;
    int modes;
    Eigen::VectorXcd entries;
};

/// Smallest truncation that keeps coherent tails below ~1e-12 for the
/// largest displacement magnitude in play (shifted arguments included).
inline int required_dim(double max_displacement_mag) {
    const double m = max_displacement_mag;
    return static_cast<int>(std::ceil(m * m + 8.0 * m + 16.0));
}

/// (a, a_dagger) with a[m, m+1] = sqrt(m+1).
std::pair<FockOperator, FockOperator> ladder_matrices(int dim);

/// exp(z a^dag - z* a) on the truncated basis. Throws TruncationError
/// when dim < required_dim(|z|).
FockOperator displacement_matrix(Complex z, int dim);

FockVector build_state(const BipartiteState& state, int dim);
FockVector build_state(const TripartiteState& state, int dim);

/// v^dag (op_a x op_b) v via mode-by-mode contraction; the tensor-product
/// matrix is never materialized.
Complex expectation(const FockOperator& op_a, const FockOperator& op_b,
                    const FockVector& v);

Complex expectation(const FockOperator& op_a, const FockOperator& op_b,
                    const FockOperator& op_c, const FockVector& v);

/// Splits D = M + iN with Hermitian M, N and returns the max-norm
/// residuals (||[M, N]||, ||M^2 + N^2 - I||) over the leading
/// (dim/2) x (dim/2) block. Both vanish for an exactly unitary D.
std::pair<double, double> hermitian_decomposition_check(Complex z, int dim);

}  // namespace cvbell
