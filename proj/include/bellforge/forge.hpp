#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bellforge/bell_polynomial.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/interval.hpp"
#include "bellforge/lhv.hpp"
#include "bellforge/linalg.hpp"
#include "bellforge/pauli.hpp"
#include "bellforge/quantum.hpp"

namespace bellforge {

enum class PauliAxis { X, Y, Z };

inline Eigen::Matrix2cd axis_matrix(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return pauli_x();
        case PauliAxis::Y: return pauli_y();
        default: return pauli_z();
    }
}

inline Eigen::Vector3d axis_vector(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return {1, 0, 0};
        case PauliAxis::Y: return {0, 1, 0};
        default: return {0, 0, 1};
    }
}

inline char axis_name(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        default: return 'Z';
    }
}

inline PauliAxis parse_axis(const std::string& token) {
    if (token.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(token[0]))) {
            case 'X': return PauliAxis::X;
            case 'Y': return PauliAxis::Y;
            case 'Z': return PauliAxis::Z;
            default: break;
        }
    }
    throw ParseError("expected Pauli axis X, Y or Z, got '" + token + "'");
}

// coeff * (sigma_aAxis tensor sigma_bAxis).
struct SeedTerm {
    double coeff = 0.0;
    PauliAxis a_axis = PauliAxis::Z;
    PauliAxis b_axis = PauliAxis::Z;

    Eigen::Matrix4cd bare_matrix() const {
        Eigen::Matrix4cd m;
        m = kron(axis_matrix(a_axis), axis_matrix(b_axis));
        return m;
    }
};

// Sum of pairwise-commuting Pauli-string terms. Commuting terms share an
// eigenbasis, so the spectrum obeys naive additive arithmetic.
class CommutingSeed {
public:
    explicit CommutingSeed(std::vector<SeedTerm> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw ParseError("seed has no terms");
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            for (std::size_t j = i + 1; j < terms_.size(); ++j) {
                Eigen::Matrix4cd lhs = terms_[i].bare_matrix();
                Eigen::Matrix4cd rhs = terms_[j].bare_matrix();
                if (commutator(lhs, rhs).norm() > 1e-12) {
                    throw NonCommutingSeed(
                        std::string("seed terms ") + axis_name(terms_[i].a_axis) +
                        axis_name(terms_[i].b_axis) + " and " + axis_name(terms_[j].a_axis) +
                        axis_name(terms_[j].b_axis) + " do not commute");
                }
            }
        }
    }

    const std::vector<SeedTerm>& terms() const { return terms_; }

    Eigen::Matrix4cd matrix() const {
        Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
        for (const auto& t : terms_) sum += t.coeff * t.bare_matrix();
        return sum;
    }

private:
    std::vector<SeedTerm> terms_;
};

struct SpectrumBound {
    Interval bounds;
    std::vector<double> naive_candidates; // the spectrum is a subset of these
};

inline SpectrumBound seed_spectrum_bound(const CommutingSeed& seed) {
    Eigen::VectorXd eigs = hermitian_eigenvalues(seed.matrix());

    std::vector<double> candidates;
    const std::size_t n = seed.terms().size();
    for (std::size_t signs = 0; signs < (std::size_t(1) << n); ++signs) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += (signs >> k & 1 ? 1.0 : -1.0) * seed.terms()[k].coeff;
        }
        candidates.push_back(sum);
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<double> deduped;
    for (double v : candidates) {
        if (deduped.empty() || v - deduped.back() > 1e-9) deduped.push_back(v);
    }
    return {{eigs.minCoeff(), eigs.maxCoeff()}, std::move(deduped)};
}

// Ordered pairs (p, q) of distinct axes; each pair contributes the two
// measurement directions (p+q)/sqrt2 and (p-q)/sqrt2.
class PairingScheme {
public:
    explicit PairingScheme(std::vector<std::pair<PauliAxis, PauliAxis>> pairs)
        : pairs_(std::move(pairs)) {
        if (pairs_.empty()) throw ParseError("pairing scheme has no pairs");
        for (const auto& [p, q] : pairs_) {
            if (p == q) {
                throw ParseError(std::string("pair (") + axis_name(p) + "," + axis_name(q) +
                                 ") must use two distinct axes");
            }
        }
    }

    const std::vector<std::pair<PauliAxis, PauliAxis>>& pairs() const { return pairs_; }

private:
    std::vector<std::pair<PauliAxis, PauliAxis>> pairs_;
};

enum class TestType { Type1, Type2, Type3, Type4, Degenerate };

inline std::string to_string(TestType t) {
    switch (t) {
        case TestType::Type1: return "Type1";
        case TestType::Type2: return "Type2";
        case TestType::Type3: return "Type3";
        case TestType::Type4: return "Type4";
        default: return "Degenerate";
    }
}

inline constexpr double kClassifyTol = 1e-9;

// Orders the hidden-variable interval [a,b] against the quantum interval
// [c,d]. Any cross-boundary tie makes every strict chain fail, hence
// Degenerate.
inline TestType classify(const Interval& hlv, const Interval& quantum,
                         double tol = kClassifyTol) {
    require_valid(hlv, "hidden-variable interval");
    require_valid(quantum, "quantum interval");
    double a = hlv.lo, b = hlv.hi, c = quantum.lo, d = quantum.hi;

    if (std::abs(a - c) <= tol || std::abs(b - d) <= tol || std::abs(a - d) <= tol ||
        std::abs(b - c) <= tol) {
        return TestType::Degenerate;
    }
    if (c < a && b < d) return TestType::Type1;
    if ((c < a && a < d && d < b) || (a < c && c < b && b < d)) return TestType::Type2;
    if (a < c && d < b) return TestType::Type3;
    if (d < a || b < c) return TestType::Type4;
    return TestType::Degenerate;
}

inline constexpr double kConstructionTheta = std::numbers::pi / 4;
inline constexpr double kForgeVerifyTol = 1e-12;

struct ForgeReport {
    CommutingSeed seed;
    BellPolynomial polynomial;
    ObservableFamily family;
    LhvVerdict lhv;
    Interval quantum_bounds;
    TestType type = TestType::Degenerate;
    SpectrumBound seed_spectrum;
    double construction_theta = kConstructionTheta;
    double verification_error = 0.0;
};

// Rewrites the seed as a polynomial in noncommuting +-1 observables.
//
// Each B-side Pauli axis u is averaged over every scheme pair containing
// it: a pair (u, q) contributes (u+q) + (u-q), a pair (r, u) contributes
// (r+u) - (r-u); both reduce to a multiple of u, and dividing by the
// occurrence count and sqrt2 restores the original operator. A-side axes
// become settings in order of first appearance; B-settings are the pairs'
// "+" directions followed by all "-" directions.
inline ForgeReport forge(const CommutingSeed& seed, const PairingScheme& scheme) {
    const auto& pairs = scheme.pairs();
    const int num_pairs = static_cast<int>(pairs.size());

    std::vector<PauliAxis> a_axes;
    auto a_index = [&](PauliAxis axis) {
        for (std::size_t i = 0; i < a_axes.size(); ++i) {
            if (a_axes[i] == axis) return static_cast<int>(i) + 1;
        }
        a_axes.push_back(axis);
        return static_cast<int>(a_axes.size());
    };

    auto occurrences = [&](PauliAxis axis) {
        int k = 0;
        for (const auto& [p, q] : pairs) k += (p == axis) + (q == axis);
        return k;
    };

    std::vector<BellTerm> terms;
    for (const auto& term : seed.terms()) {
        int ai = a_index(term.a_axis);
        int k = occurrences(term.b_axis);
        if (k == 0) {
            throw IncompletePairing(std::string("seed uses B-axis ") +
                                    axis_name(term.b_axis) +
                                    " but no scheme pair contains it");
        }
        double w = term.coeff / (std::numbers::sqrt2 * k);
        for (int t = 0; t < num_pairs; ++t) {
            const auto& [p, q] = pairs[static_cast<std::size_t>(t)];
            if (p == term.b_axis) {
                terms.push_back({w, ai, t + 1});
                terms.push_back({w, ai, num_pairs + t + 1});
            } else if (q == term.b_axis) {
                terms.push_back({w, ai, t + 1});
                terms.push_back({-w, ai, num_pairs + t + 1});
            }
        }
    }

    std::vector<BlochObservable> a_settings;
    for (PauliAxis axis : a_axes) a_settings.emplace_back(axis_vector(axis));
    std::vector<BlochObservable> b_settings;
    for (const auto& [p, q] : pairs) {
        b_settings.emplace_back(Eigen::Vector3d(
            (axis_vector(p) + axis_vector(q)) / std::numbers::sqrt2));
    }
    for (const auto& [p, q] : pairs) {
        b_settings.emplace_back(Eigen::Vector3d(
            (axis_vector(p) - axis_vector(q)) / std::numbers::sqrt2));
    }

    BellPolynomial poly(Scenario(static_cast<int>(a_axes.size()), 2 * num_pairs),
                        std::move(terms));
    ObservableFamily family = constant_family(std::move(a_settings), std::move(b_settings));

    Eigen::MatrixXcd assembled = assemble(poly, family, kConstructionTheta);
    double error = (assembled - seed.matrix()).cwiseAbs().maxCoeff();
    if (error >= kForgeVerifyTol) {
        throw VerificationFailed("assembled polynomial deviates from the seed by " +
                                 std::to_string(error));
    }

    LhvVerdict lhv = enumerate_lhv(poly);
    Interval quantum = quantum_band(poly, family, kConstructionTheta);
    TestType type = classify(lhv.bounds, quantum);

    return {seed,  poly, family, std::move(lhv), quantum, type, seed_spectrum_bound(seed),
            kConstructionTheta, error};
}

// Seed file: one term per line, "<coeff> <A-axis> <B-axis>".
// '#' comments and blank lines are skipped.
inline CommutingSeed parse_seed(std::istream& in) {
    std::vector<SeedTerm> terms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first[0] == '#') continue;

        SeedTerm term;
        try {
            term.coeff = std::stod(first);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad coefficient '" +
                             first + "'");
        }
        std::string a_tok, b_tok, extra;
        if (!(fields >> a_tok >> b_tok) || (fields >> extra)) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected '<coeff> <A-axis> <B-axis>'");
        }
        term.a_axis = parse_axis(a_tok);
        term.b_axis = parse_axis(b_tok);
        terms.push_back(term);
    }
    return CommutingSeed(std::move(terms));
}

// Scheme file: one pair per line, "<p-axis> <q-axis>".
inline PairingScheme parse_scheme(std::istream& in) {
    std::vector<std::pair<PauliAxis, PauliAxis>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first[0] == '#') continue;

        std::string second, extra;
        if (!(fields >> second) || (fields >> extra)) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected '<p-axis> <q-axis>'");
        }
        pairs.emplace_back(parse_axis(first), parse_axis(second));
    }
    return PairingScheme(std::move(pairs));
}

} // namespace bellforge
