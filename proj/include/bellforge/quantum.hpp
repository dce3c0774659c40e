#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>
#include <vector>

#include "bellforge/bell_polynomial.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/interval.hpp"
#include "bellforge/linalg.hpp"
#include "bellforge/pauli.hpp"

namespace bellforge {

inline constexpr double kImagResidueTol = 1e-10;
inline constexpr int kDefaultGrid = 721;

// Pure state, stored normalized.
class StateVector {
public:
    explicit StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
        double norm = amps_.norm();
        if (norm < 1e-14) throw ZeroVector("cannot normalize a zero state vector");
        amps_ /= norm;
    }

    StateVector(std::initializer_list<Complex> amplitudes)
        : StateVector(Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(
              amplitudes.begin(), static_cast<Eigen::Index>(amplitudes.size())))) {}

    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

private:
    Eigen::VectorXcd amps_;
};

class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
        if (!is_hermitian(m_)) {
            throw NotHermitian("density matrix must be Hermitian");
        }
        if (std::abs(m_.trace().real() - 1.0) > 1e-12 ||
            std::abs(m_.trace().imag()) > 1e-12) {
            throw NotDensityMatrix("density matrix trace must be 1");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw NoConvergence("density matrix eigensolve failed");
        }
        if (solver.eigenvalues().minCoeff() < -1e-10) {
            throw NotDensityMatrix("density matrix has a negative eigenvalue");
        }
    }

    static DensityMatrix pure(const StateVector& s) {
        return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
    }

    const Eigen::MatrixXcd& matrix() const { return m_; }

private:
    Eigen::MatrixXcd m_;
};

inline StateVector singlet_state() {
    double r = 1.0 / std::numbers::sqrt2;
    return StateVector{0, r, -r, 0};
}

inline StateVector chi_state() {
    double r = 1.0 / std::numbers::sqrt2;
    return StateVector{r, 0, 0, r};
}

inline std::vector<StateVector> triplet_basis() {
    double r = 1.0 / std::numbers::sqrt2;
    return {StateVector{1, 0, 0, 0}, StateVector{0, r, r, 0}, StateVector{0, 0, 0, 1}};
}

// Equal classical mixture of the up-down and down-up product states.
inline DensityMatrix updown_mixture() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(1, 1) = 0.5;
    m(2, 2) = 0.5;
    return DensityMatrix(std::move(m));
}

namespace detail {

inline double real_within_residue(Complex value, const std::string& label) {
    if (std::abs(value.imag()) > kImagResidueTol) {
        throw NotHermitian(label + ": imaginary residue " + std::to_string(value.imag()) +
                           " exceeds tolerance");
    }
    return value.real();
}

} // namespace detail

template <typename Derived>
double expectation(const StateVector& s, const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || m.rows() != s.dim()) {
        throw DimensionMismatch("expectation: operator is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " against state of dimension " +
                                std::to_string(s.dim()));
    }
    if (!is_hermitian(m)) throw NotHermitian("expectation: operator is not Hermitian");
    Complex value = (s.amplitudes().adjoint() *
                     m.template cast<Complex>() * s.amplitudes())(0, 0);
    return detail::real_within_residue(value, "expectation");
}

template <typename Derived>
double mixed_expectation(const DensityMatrix& rho, const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols() || m.rows() != rho.matrix().rows()) {
        throw DimensionMismatch("mixed_expectation: operator is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + " against density matrix of " +
                                std::to_string(rho.matrix().rows()));
    }
    Complex value = (m.template cast<Complex>() * rho.matrix()).trace();
    return detail::real_within_residue(value, "mixed_expectation");
}

struct InterferenceSplit {
    double diagonal = 0.0;
    double cross = 0.0;
};

// Expectation of m on normalize(psi1 + psi2), separated into the two
// same-branch terms and the two cross terms. diagonal + cross equals the
// full expectation.
inline InterferenceSplit interference_split(const Eigen::VectorXcd& psi1,
                                            const Eigen::VectorXcd& psi2,
                                            const Eigen::MatrixXcd& m) {
    if (psi1.size() != psi2.size() || m.rows() != m.cols() || m.rows() != psi1.size()) {
        throw DimensionMismatch("interference_split: shape mismatch");
    }
    if (!is_hermitian(m)) throw NotHermitian("interference_split: operator is not Hermitian");
    double n2 = (psi1 + psi2).squaredNorm();
    if (n2 < 1e-28) throw ZeroVector("interference_split: psi1 + psi2 is the zero vector");

    Complex d = (psi1.adjoint() * m * psi1)(0, 0) + (psi2.adjoint() * m * psi2)(0, 0);
    Complex x = (psi1.adjoint() * m * psi2)(0, 0) + (psi2.adjoint() * m * psi1)(0, 0);
    return {detail::real_within_residue(d, "interference_split diagonal") / n2,
            detail::real_within_residue(x, "interference_split cross") / n2};
}

inline Interval quantum_band(const BellPolynomial& p, const ObservableFamily& fam,
                             double theta) {
    Eigen::VectorXd eigs = hermitian_eigenvalues(assemble(p, fam, theta));
    return {eigs.minCoeff(), eigs.maxCoeff()};
}

// Uniform grid over [0, 2pi] inclusive of both endpoints.
inline std::vector<double> theta_grid(int points = kDefaultGrid) {
    if (points < 2) throw DimensionMismatch("theta grid needs at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    double step = 2.0 * std::numbers::pi / (points - 1);
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = k * step;
    return grid;
}

inline Interval global_quantum_range(const BellPolynomial& p, const ObservableFamily& fam,
                                     int grid_points = kDefaultGrid) {
    Interval range{0.0, 0.0};
    bool first = true;
    for (double theta : theta_grid(grid_points)) {
        Interval band = quantum_band(p, fam, theta);
        if (first) {
            range = band;
            first = false;
        } else {
            range.lo = std::min(range.lo, band.lo);
            range.hi = std::max(range.hi, band.hi);
        }
    }
    return range;
}

// Closed-form eigenvalues, sorted ascending.
inline std::array<double, 4> analytic_spectrum_s(double theta) {
    double c2 = std::cos(2 * theta);
    double s2 = std::sin(2 * theta);
    double root = std::sqrt(1 + s2 * s2);
    std::array<double, 4> eigs{-2 * root, -2 * c2, 2 * c2, 2 * root};
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

inline std::array<double, 4> analytic_spectrum_t(double theta) {
    double cs = std::cos(theta) + std::sin(theta);
    double s2 = std::sin(2 * theta);
    double c2 = std::cos(2 * theta);
    double root_plus = std::sqrt(c2 * c2 + 2 + 2 * s2);
    double root_minus = std::sqrt(c2 * c2 + 2 - 2 * s2);
    std::array<double, 4> eigs{
        2 * cs * (-s2 + root_plus),
        2 * cs * (-s2 - root_plus),
        2 * cs * (s2 + root_minus),
        2 * cs * (s2 - root_minus),
    };
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

struct BandSample {
    double theta = 0.0;
    Interval quantum;
    double singlet = 0.0;
    double chi = 0.0;
};

inline BandSample band_sample(const BellPolynomial& p, const ObservableFamily& fam,
                              double theta) {
    Eigen::MatrixXcd op = assemble(p, fam, theta);
    Eigen::VectorXd eigs = hermitian_eigenvalues(op);
    return {theta,
            {eigs.minCoeff(), eigs.maxCoeff()},
            expectation(singlet_state(), op),
            expectation(chi_state(), op)};
}

} // namespace bellforge
