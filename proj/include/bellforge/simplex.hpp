#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "bellforge/errors.hpp"

namespace bellforge {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    Eigen::VectorXd x;
};

inline constexpr double kLpTol = 1e-9;

// Two-phase dense simplex for: optimize c.x subject to A x = b, x >= 0.
// Bland's rule (smallest eligible index everywhere) guarantees termination.
inline LpSolution solve_equality_lp(Eigen::MatrixXd a, Eigen::VectorXd b,
                                    const Eigen::VectorXd& c, bool maximize,
                                    double tol = kLpTol) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (b.size() != m || c.size() != n) {
        throw DimensionMismatch("lp: A is " + std::to_string(m) + "x" + std::to_string(n) +
                                " but b has " + std::to_string(b.size()) + " and c has " +
                                std::to_string(c.size()) + " entries");
    }

    for (Eigen::Index i = 0; i < m; ++i) {
        if (b(i) < 0) {
            a.row(i) = -a.row(i);
            b(i) = -b(i);
        }
    }

    // Tableau: columns [real 0..n-1 | artificial n..n+m-1 | rhs].
    Eigen::MatrixXd t(m, n + m + 1);
    t.leftCols(n) = a;
    t.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    t.col(n + m) = b;
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    auto pivot = [&](Eigen::VectorXd& cost, Eigen::Index limit) -> bool {
        // Returns false if an improving column has no positive entry (unbounded).
        for (;;) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < limit; ++j) {
                if (cost(j) < -tol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;

            Eigen::Index leave = -1;
            double best_ratio = 0.0;
            for (Eigen::Index i = 0; i < m; ++i) {
                if (t(i, enter) > tol) {
                    double ratio = t(i, n + m) / t(i, enter);
                    if (leave < 0 || ratio < best_ratio - tol ||
                        (ratio < best_ratio + tol &&
                         basis[static_cast<std::size_t>(i)] <
                             basis[static_cast<std::size_t>(leave)])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0) return false;

            t.row(leave) /= t(leave, enter);
            for (Eigen::Index i = 0; i < m; ++i) {
                if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
            }
            cost -= cost(enter) * t.row(leave).transpose();
            basis[static_cast<std::size_t>(leave)] = enter;
        }
    };

    // Phase 1: minimize the sum of artificials.
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(n + m + 1);
    cost1.segment(n, m).setOnes();
    for (Eigen::Index i = 0; i < m; ++i) cost1 -= t.row(i).transpose();
    pivot(cost1, n + m);
    if (-cost1(n + m) > tol) return {LpStatus::Infeasible, 0.0, {}};

    // Drive any remaining artificials out of the basis.
    for (Eigen::Index i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) continue;
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(t(i, j)) > tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) continue; // redundant row; artificial stays at zero
        t.row(i) /= t(i, enter);
        for (Eigen::Index k = 0; k < m; ++k) {
            if (k != i && t(k, enter) != 0.0) t.row(k) -= t(k, enter) * t.row(i);
        }
        basis[static_cast<std::size_t>(i)] = enter;
    }

    // Phase 2 over the real columns only.
    Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(n + m + 1);
    cost2.head(n) = maximize ? (-c).eval() : c;
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index bj = basis[static_cast<std::size_t>(i)];
        if (bj < n && cost2(bj) != 0.0) cost2 -= cost2(bj) * t.row(i).transpose();
    }
    if (!pivot(cost2, n)) return {LpStatus::Unbounded, 0.0, {}};

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index bj = basis[static_cast<std::size_t>(i)];
        if (bj < n) x(bj) = t(i, n + m);
    }
    return {LpStatus::Optimal, c.dot(x), x};
}

} // namespace bellforge
