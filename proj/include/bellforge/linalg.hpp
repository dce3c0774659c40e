#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <string>

#include "bellforge/errors.hpp"

namespace bellforge {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr int kMaxEigenDim = 64;

// Kronecker product. Result scalar follows Eigen's promotion of the two
// operand scalars.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using ScalarA = typename DerivedA::Scalar;
    using ScalarB = typename DerivedB::Scalar;
    using Scalar = typename Eigen::ScalarBinaryOpTraits<ScalarA, ScalarB>::ReturnType;
    using Result = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Result out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                Scalar(a(i, j)) * b.template cast<Scalar>();
    return out;
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionMismatch("commutator: operands must be square and equal-sized, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
    return (a * b - b * a).eval();
}

// Entrywise check |m - m^H| <= tol.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

struct Eigensystem {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // columns, orthonormal, matching order
};

namespace detail {

template <typename Derived>
void check_eigen_input(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("eigensolve: matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() > kMaxEigenDim) {
        throw DimensionMismatch("eigensolve: dimension " + std::to_string(m.rows()) +
                                " exceeds supported maximum " + std::to_string(kMaxEigenDim));
    }
    if (!is_hermitian(m)) {
        throw NotHermitian("eigensolve: matrix is not Hermitian within tolerance " +
                           std::to_string(kHermitianTol));
    }
}

} // namespace detail

template <typename Derived>
Eigensystem hermitian_eigensystem(const Eigen::MatrixBase<Derived>& m) {
    detail::check_eigen_input(m);
    Eigen::MatrixXcd work = m.template cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(work);
    if (solver.info() != Eigen::Success) {
        throw NoConvergence("eigensolve: iteration failed to converge");
    }
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
    detail::check_eigen_input(m);
    Eigen::MatrixXcd work = m.template cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(work, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NoConvergence("eigensolve: iteration failed to converge");
    }
    return solver.eigenvalues();
}

} // namespace bellforge
