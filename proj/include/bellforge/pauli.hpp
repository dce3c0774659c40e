#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bellforge/errors.hpp"

namespace bellforge {

using Complex = std::complex<double>;

inline Eigen::Matrix2cd pauli_id() {
    return Eigen::Matrix2cd::Identity();
}

inline Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1,
         1, 0;
    return m;
}

inline Eigen::Matrix2cd pauli_y() {
    Eigen::Matrix2cd m;
    m << Complex(0, 0), Complex(0, -1),
         Complex(0, 1), Complex(0, 0);
    return m;
}

inline Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0,
         0, -1;
    return m;
}

inline constexpr double kUnitVectorTol = 1e-12;

// Spin observable n . sigma for a unit Bloch vector n. Eigenvalues are +-1.
class BlochObservable {
public:
    BlochObservable(double nx, double ny, double nz) : n_(nx, ny, nz) {
        double err = std::abs(n_.norm() - 1.0);
        if (err > kUnitVectorTol) {
            throw NonUnitVector("Bloch vector norm deviates from 1 by " + std::to_string(err));
        }
    }

    explicit BlochObservable(const Eigen::Vector3d& n)
        : BlochObservable(n.x(), n.y(), n.z()) {}

    const Eigen::Vector3d& axis() const { return n_; }

    Eigen::Matrix2cd matrix() const {
        return n_.x() * pauli_x() + n_.y() * pauli_y() + n_.z() * pauli_z();
    }

private:
    Eigen::Vector3d n_;
};

enum class Side { A, B };

// A theta-parametrised collection of measurement settings for the two sides.
// Indices are 1-based; the generator is total on its declared index range.
class ObservableFamily {
public:
    ObservableFamily(int num_a, int num_b,
                     std::function<BlochObservable(Side, int, double)> generator)
        : num_a_(num_a), num_b_(num_b), generator_(std::move(generator)) {
        if (num_a_ < 1 || num_b_ < 1) {
            throw ScenarioMismatch("observable family needs at least one setting per side");
        }
    }

    int num_a() const { return num_a_; }
    int num_b() const { return num_b_; }

    BlochObservable a(int i, double theta) const { return at(Side::A, i, theta); }
    BlochObservable b(int j, double theta) const { return at(Side::B, j, theta); }

    Eigen::Matrix2cd a_matrix(int i, double theta) const { return a(i, theta).matrix(); }
    Eigen::Matrix2cd b_matrix(int j, double theta) const { return b(j, theta).matrix(); }

    BlochObservable at(Side side, int index, double theta) const {
        int limit = side == Side::A ? num_a_ : num_b_;
        if (index < 1 || index > limit) {
            throw ScenarioMismatch("setting index " + std::to_string(index) +
                                   " outside 1.." + std::to_string(limit));
        }
        return generator_(side, index, theta);
    }

private:
    int num_a_;
    int num_b_;
    std::function<BlochObservable(Side, int, double)> generator_;
};

// Two settings per side. A1 is fixed along z, the rest rotate in the x-z
// plane: A2 at angle 2*theta from z, B1 at +theta, B2 at -theta.
inline ObservableFamily family_s() {
    return ObservableFamily(2, 2, [](Side side, int index, double theta) {
        if (side == Side::A) {
            if (index == 1) return BlochObservable(0, 0, 1);
            return BlochObservable(std::sin(2 * theta), 0, std::cos(2 * theta));
        }
        if (index == 1) return BlochObservable(std::sin(theta), 0, std::cos(theta));
        return BlochObservable(-std::sin(theta), 0, std::cos(theta));
    });
}

// Three A settings and six B settings. B4..B6 mirror B1..B3 with the theta
// component negated, which is what the averaging construction produces.
inline ObservableFamily family_t() {
    return ObservableFamily(3, 6, [](Side side, int index, double theta) {
        double s = std::sin(theta);
        double c = std::cos(theta);
        double s2 = std::sin(2 * theta);
        double c2 = std::cos(2 * theta);
        if (side == Side::A) {
            switch (index) {
                case 1: return BlochObservable(s2, 0, c2);
                case 2: return BlochObservable(0, s2, c2);
                default: return BlochObservable(0, 0, 1);
            }
        }
        switch (index) {
            case 1: return BlochObservable(0, c, s);
            case 2: return BlochObservable(s, 0, c);
            case 3: return BlochObservable(c, s, 0);
            case 4: return BlochObservable(0, c, -s);
            case 5: return BlochObservable(-s, 0, c);
            default: return BlochObservable(c, -s, 0);
        }
    });
}

// Family whose settings ignore theta. Used for polynomials produced by the
// seed expansion, where the settings are fixed Pauli combinations.
inline ObservableFamily constant_family(std::vector<BlochObservable> a_settings,
                                        std::vector<BlochObservable> b_settings) {
    if (a_settings.empty() || b_settings.empty()) {
        throw ScenarioMismatch("constant family needs at least one setting per side");
    }
    auto a_shared = std::make_shared<std::vector<BlochObservable>>(std::move(a_settings));
    auto b_shared = std::make_shared<std::vector<BlochObservable>>(std::move(b_settings));
    return ObservableFamily(
        static_cast<int>(a_shared->size()), static_cast<int>(b_shared->size()),
        [a_shared, b_shared](Side side, int index, double) {
            const auto& list = side == Side::A ? *a_shared : *b_shared;
            return list[static_cast<std::size_t>(index - 1)];
        });
}

} // namespace bellforge
