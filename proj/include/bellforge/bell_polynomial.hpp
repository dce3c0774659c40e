#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bellforge/errors.hpp"
#include "bellforge/format.hpp"
#include "bellforge/linalg.hpp"
#include "bellforge/pauli.hpp"

namespace bellforge {

inline constexpr int kMaxScenarioSettings = 24;

// Measurement scenario: num_a settings on one side, num_b on the other.
struct Scenario {
    int num_a = 0;
    int num_b = 0;

    Scenario(int a, int b) : num_a(a), num_b(b) {
        if (a < 1 || b < 1) {
            throw ScenarioMismatch("scenario needs at least one setting per side");
        }
        if (a + b > kMaxScenarioSettings) {
            throw ScenarioTooLarge("scenario with " + std::to_string(a + b) +
                                   " total settings exceeds cap of " +
                                   std::to_string(kMaxScenarioSettings));
        }
    }

    bool operator==(const Scenario& other) const {
        return num_a == other.num_a && num_b == other.num_b;
    }
};

// One correlation term: coeff * <A_a B_b>, with 1-based setting indices.
struct BellTerm {
    double coeff = 0.0;
    int a = 0;
    int b = 0;
};

// Linear combination of two-party correlators over a fixed scenario.
// Terms are kept canonical: sorted by (a, b), duplicates merged, exact
// zeros dropped.
class BellPolynomial {
public:
    BellPolynomial(Scenario scenario, std::vector<BellTerm> terms)
        : scenario_(scenario) {
        for (const auto& t : terms) {
            if (t.a < 1 || t.a > scenario_.num_a || t.b < 1 || t.b > scenario_.num_b) {
                throw ScenarioMismatch("term A" + std::to_string(t.a) + " B" +
                                       std::to_string(t.b) + " outside scenario (" +
                                       std::to_string(scenario_.num_a) + ", " +
                                       std::to_string(scenario_.num_b) + ")");
            }
        }
        std::sort(terms.begin(), terms.end(), [](const BellTerm& x, const BellTerm& y) {
            return x.a != y.a ? x.a < y.a : x.b < y.b;
        });
        for (const auto& t : terms) {
            if (!terms_.empty() && terms_.back().a == t.a && terms_.back().b == t.b) {
                terms_.back().coeff += t.coeff;
            } else {
                terms_.push_back(t);
            }
        }
        std::erase_if(terms_, [](const BellTerm& t) { return t.coeff == 0.0; });
    }

    const Scenario& scenario() const { return scenario_; }
    const std::vector<BellTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    double coefficient(int a, int b) const {
        for (const auto& t : terms_)
            if (t.a == a && t.b == b) return t.coeff;
        return 0.0;
    }

    BellPolynomial scaled(double factor) const {
        std::vector<BellTerm> out = terms_;
        for (auto& t : out) t.coeff *= factor;
        return BellPolynomial(scenario_, std::move(out));
    }

    friend BellPolynomial operator+(const BellPolynomial& lhs, const BellPolynomial& rhs) {
        if (!(lhs.scenario_ == rhs.scenario_)) {
            throw ScenarioMismatch("cannot add polynomials over different scenarios");
        }
        std::vector<BellTerm> merged = lhs.terms_;
        merged.insert(merged.end(), rhs.terms_.begin(), rhs.terms_.end());
        return BellPolynomial(lhs.scenario_, std::move(merged));
    }

private:
    Scenario scenario_;
    std::vector<BellTerm> terms_;
};

inline bool approx_equal(const BellPolynomial& lhs, const BellPolynomial& rhs,
                         double tol = 1e-12) {
    if (!(lhs.scenario() == rhs.scenario())) return false;
    if (lhs.size() != rhs.size()) return false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        const auto& x = lhs.terms()[i];
        const auto& y = rhs.terms()[i];
        if (x.a != y.a || x.b != y.b || std::abs(x.coeff - y.coeff) > tol) return false;
    }
    return true;
}

// A1B1 + A1B2 + A2B1 - A2B2.
inline BellPolynomial chsh_polynomial() {
    return BellPolynomial(Scenario(2, 2), {{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {-1, 2, 2}});
}

// Twelve-term combination over the (3, 6) scenario produced by expanding
// the isotropic two-qubit seed with the cyclic pairing.
inline BellPolynomial t_polynomial() {
    return BellPolynomial(Scenario(3, 6), {
        {1, 1, 2}, {1, 1, 3}, {-1, 1, 5}, {1, 1, 6},
        {1, 2, 1}, {1, 2, 3}, {1, 2, 4}, {-1, 2, 6},
        {1, 3, 1}, {1, 3, 2}, {-1, 3, 4}, {1, 3, 5},
    });
}

// Operator obtained by substituting the family's settings at the given
// angle: sum of coeff * kron(A_a, B_b).
inline Eigen::MatrixXcd assemble(const BellPolynomial& poly, const ObservableFamily& family,
                                 double theta) {
    if (family.num_a() < poly.scenario().num_a || family.num_b() < poly.scenario().num_b) {
        throw ScenarioMismatch("family provides fewer settings than the polynomial uses");
    }
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto& t : poly.terms()) {
        sum += t.coeff * kron(family.a_matrix(t.a, theta), family.b_matrix(t.b, theta));
    }
    return sum;
}

// Text form: one term per line, "<coeff> A<i> B<j>". Blank lines and lines
// starting with '#' are skipped on input.
inline std::string to_text(const BellPolynomial& poly) {
    std::ostringstream out;
    for (const auto& t : poly.terms()) {
        out << format_number(t.coeff) << " A" << t.a << " B" << t.b << "\n";
    }
    return out.str();
}

inline BellPolynomial parse_polynomial(std::istream& in, const Scenario& scenario) {
    std::vector<BellTerm> terms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first[0] == '#') continue;

        BellTerm term;
        std::string a_tok, b_tok;
        try {
            term.coeff = std::stod(first);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad coefficient '" +
                             first + "'");
        }
        if (!(fields >> a_tok >> b_tok) || a_tok.size() < 2 || b_tok.size() < 2 ||
            a_tok[0] != 'A' || b_tok[0] != 'B') {
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected '<coeff> A<i> B<j>'");
        }
        try {
            term.a = std::stoi(a_tok.substr(1));
            term.b = std::stoi(b_tok.substr(1));
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad setting index");
        }
        std::string extra;
        if (fields >> extra) {
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
        }
        terms.push_back(term);
    }
    return BellPolynomial(scenario, std::move(terms));
}

} // namespace bellforge
