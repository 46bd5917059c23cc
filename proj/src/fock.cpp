#include "cvbell/fock.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace cvbell {

namespace {

void require_dim_at_least(int dim, int minimum) {
    if (dim < minimum) {
        throw InvalidDim("dim must be >= " + std::to_string(minimum) +
                         ", got " + std::to_string(dim));
    }
}

void require_capacity(Complex z, int dim) {
    if (z == Complex{0.0, 0.0}) return;  // exactly the identity, no tail
    const int need = required_dim(std::abs(z));
    if (dim < need) {
        throw TruncationError("dim " + std::to_string(dim) +
                              " below required_dim " + std::to_string(need) +
                              " for |z| = " + std::to_string(std::abs(z)));
    }
}

// D(alpha)|0>: first column of the displacement matrix.
Eigen::VectorXcd coherent_column(Complex alpha, int dim) {
    return displacement_matrix(alpha, dim).entries.col(0);
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

// Applies a single-mode operator to the given mode of a flattened
// multi-mode vector (first mode slowest). Each slab between two
// reshapes is a plain matrix product, so Eigen's GEMM does the work.
Eigen::VectorXcd apply_mode(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& v,
                            int mode, int dim, int modes) {
    Eigen::Index inner = 1;
    for (int k = mode + 1; k < modes; ++k) inner *= dim;
    Eigen::Index outer = 1;
    for (int k = 0; k < mode; ++k) outer *= dim;

    Eigen::VectorXcd out(v.size());
    if (inner == 1) {
        Eigen::Map<const Eigen::MatrixXcd> slab(v.data(), dim, outer);
        Eigen::Map<Eigen::MatrixXcd> res(out.data(), dim, outer);
        res.noalias() = op * slab;
        return out;
    }
    const Eigen::Index block = inner * dim;
    for (Eigen::Index o = 0; o < outer; ++o) {
        Eigen::Map<const Eigen::MatrixXcd> slab(v.data() + o * block, inner, dim);
        Eigen::Map<Eigen::MatrixXcd> res(out.data() + o * block, inner, dim);
        res.noalias() = slab * op.transpose();
    }
    return out;
}

void require_match(const FockOperator& op, const FockVector& v, const char* which) {
    if (op.dim != v.dim) {
        throw DimMismatch(std::string(which) + " operator dim " +
                          std::to_string(op.dim) + " != state per-mode dim " +
                          std::to_string(v.dim));
    }
}

}  // namespace

std::pair<FockOperator, FockOperator> ladder_matrices(int dim) {
    require_dim_at_least(dim, 2);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m + 1 < dim; ++m) {
        a(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
    }
    return {FockOperator{dim, a}, FockOperator{dim, a.adjoint()}};
}

FockOperator displacement_matrix(Complex z, int dim) {
    require_dim_at_least(dim, 2);
    require_capacity(z, dim);
    const auto [a, a_dag] = ladder_matrices(dim);
    const Eigen::MatrixXcd generator = z * a_dag.entries - std::conj(z) * a.entries;
    return {dim, generator.exp()};
}

FockVector build_state(const BipartiteState& state, int dim) {
    const Complex ie{0.0, state.eta};
    const Complex is{0.0, state.sigma};
    Eigen::VectorXcd v =
        kron(coherent_column(ie, dim), coherent_column(is, dim)) -
        kron(coherent_column(-ie, dim), coherent_column(-is, dim));
    return {dim, 2, state.norm * v};
}

FockVector build_state(const TripartiteState& state, int dim) {
    const Complex ie{0.0, state.eta};
    const Complex is{0.0, state.sigma};
    const Complex it{0.0, state.tau};
    Eigen::VectorXcd v =
        kron(kron(coherent_column(ie, dim), coherent_column(is, dim)),
             coherent_column(it, dim)) -
        kron(kron(coherent_column(-ie, dim), coherent_column(-is, dim)),
             coherent_column(-it, dim));
    return {dim, 3, state.norm * v};
}

Complex expectation(const FockOperator& op_a, const FockOperator& op_b,
                    const FockVector& v) {
    if (v.modes != 2) throw DimMismatch("expected a 2-mode state");
    require_match(op_a, v, "mode-a");
    require_match(op_b, v, "mode-b");
    Eigen::VectorXcd w = apply_mode(op_b.entries, v.entries, 1, v.dim, 2);
    w = apply_mode(op_a.entries, w, 0, v.dim, 2);
    return v.entries.dot(w);
}

Complex expectation(const FockOperator& op_a, const FockOperator& op_b,
                    const FockOperator& op_c, const FockVector& v) {
    if (v.modes != 3) throw DimMismatch("expected a 3-mode state");
    require_match(op_a, v, "mode-a");
    require_match(op_b, v, "mode-b");
    require_match(op_c, v, "mode-c");
    Eigen::VectorXcd w = apply_mode(op_c.entries, v.entries, 2, v.dim, 3);
    w = apply_mode(op_b.entries, w, 1, v.dim, 3);
    w = apply_mode(op_a.entries, w, 0, v.dim, 3);
    return v.entries.dot(w);
}

std::pair<double, double> hermitian_decomposition_check(Complex z, int dim) {
    const Eigen::MatrixXcd d = displacement_matrix(z, dim).entries;
    const Eigen::MatrixXcd d_dag = d.adjoint();
    const Eigen::MatrixXcd m = 0.5 * (d + d_dag);
    const Eigen::MatrixXcd n = Complex{0.0, -0.5} * (d - d_dag);
    const int h = dim / 2;
    const Eigen::MatrixXcd comm = m * n - n * m;
    const Eigen::MatrixXcd circ =
        m * m + n * n - Eigen::MatrixXcd::Identity(dim, dim);
    return {comm.topLeftCorner(h, h).cwiseAbs().maxCoeff(),
            circ.topLeftCorner(h, h).cwiseAbs().maxCoeff()};
}

}  // namespace cvbell
