#pragma once

#include <Eigen/Dense>

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bellforge/bell_polynomial.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/format.hpp"
#include "bellforge/interval.hpp"
#include "bellforge/simplex.hpp"

namespace bellforge {

// One hidden-variable point: a fixed ±1 outcome for every setting.
struct DeterministicStrategy {
    std::vector<int> a_values;
    std::vector<int> b_values;

    static DeterministicStrategy from_index(const Scenario& scenario, std::uint64_t index) {
        DeterministicStrategy s;
        s.a_values.resize(static_cast<std::size_t>(scenario.num_a));
        s.b_values.resize(static_cast<std::size_t>(scenario.num_b));
        for (int k = 0; k < scenario.num_a; ++k)
            s.a_values[static_cast<std::size_t>(k)] = (index >> k) & 1 ? 1 : -1;
        for (int k = 0; k < scenario.num_b; ++k)
            s.b_values[static_cast<std::size_t>(k)] =
                (index >> (scenario.num_a + k)) & 1 ? 1 : -1;
        return s;
    }
};

inline double evaluate(const BellPolynomial& p, const DeterministicStrategy& s) {
    double sum = 0.0;
    for (const auto& t : p.terms()) {
        sum += t.coeff * s.a_values[static_cast<std::size_t>(t.a - 1)] *
               s.b_values[static_cast<std::size_t>(t.b - 1)];
    }
    return sum;
}

struct LhvVerdict {
    std::vector<double> value_set; // ascending, deduplicated
    Interval bounds;
};

inline constexpr double kValueSetTol = 1e-9;

// Exact classical analysis by sweeping every deterministic strategy. The
// hidden-variable average is a convex mixture over strategies, so the
// extremes of the value set are the exact bounds.
inline LhvVerdict enumerate_lhv(const BellPolynomial& p) {
    const Scenario& sc = p.scenario();
    const std::uint64_t count = std::uint64_t(1) << (sc.num_a + sc.num_b);
    std::set<double> distinct;
    for (std::uint64_t index = 0; index < count; ++index) {
        distinct.insert(evaluate(p, DeterministicStrategy::from_index(sc, index)));
    }
    LhvVerdict verdict;
    for (double v : distinct) {
        if (verdict.value_set.empty() || v - verdict.value_set.back() > kValueSetTol) {
            verdict.value_set.push_back(v);
        }
    }
    verdict.bounds = {verdict.value_set.front(), verdict.value_set.back()};
    return verdict;
}

inline Interval lhv_expectation_bounds(const BellPolynomial& p) {
    return enumerate_lhv(p).bounds;
}

// Same bounds through the LP route: optimize the mixture weights over the
// strategy simplex. Kept as an independent cross-check of enumerate_lhv.
inline Interval lhv_bounds_lp(const BellPolynomial& p) {
    const Scenario& sc = p.scenario();
    const std::uint64_t count = std::uint64_t(1) << (sc.num_a + sc.num_b);
    Eigen::VectorXd values(static_cast<Eigen::Index>(count));
    for (std::uint64_t index = 0; index < count; ++index) {
        values(static_cast<Eigen::Index>(index)) =
            evaluate(p, DeterministicStrategy::from_index(sc, index));
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(1, values.size());
    Eigen::VectorXd b = Eigen::VectorXd::Ones(1);
    LpSolution lo = solve_equality_lp(a, b, values, false);
    LpSolution hi = solve_equality_lp(a, b, values, true);
    if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal) {
        throw NoConvergence("strategy-simplex LP did not reach an optimum");
    }
    return {lo.objective, hi.objective};
}

inline constexpr double kCorrelationSlack = 1e-12;

// Pair correlations <A_i B_j>, each in [-1, 1]. Values within 1e-12 outside
// are clamped; anything further out is rejected.
class CorrelationTable {
public:
    CorrelationTable(Scenario scenario, Eigen::MatrixXd values)
        : scenario_(scenario), values_(std::move(values)) {
        if (values_.rows() != scenario_.num_a || values_.cols() != scenario_.num_b) {
            throw ScenarioMismatch("correlation table shape " + std::to_string(values_.rows()) +
                                   "x" + std::to_string(values_.cols()) +
                                   " does not match scenario");
        }
        for (Eigen::Index i = 0; i < values_.rows(); ++i) {
            for (Eigen::Index j = 0; j < values_.cols(); ++j) {
                double v = values_(i, j);
                if (std::abs(v) > 1.0 + kCorrelationSlack) {
                    throw MalformedTable("correlation (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ") = " + std::to_string(v) +
                                         " is outside [-1, 1]");
                }
                values_(i, j) = std::clamp(v, -1.0, 1.0);
            }
        }
    }

    const Scenario& scenario() const { return scenario_; }
    double value(int a, int b) const { return values_(a - 1, b - 1); }
    const Eigen::MatrixXd& values() const { return values_; }

private:
    Scenario scenario_;
    Eigen::MatrixXd values_;
};

// The four CHSH-type combinations with the minus sign rotated through the
// positions (2,2), (2,1), (1,2), (1,1). Each must lie in [-2, 2] for a
// hidden-variable distribution over the (2,2) correlations to exist.
inline std::array<double, 4> fine_inequalities(const CorrelationTable& c) {
    if (!(c.scenario() == Scenario(2, 2))) {
        throw ScenarioMismatch("fine inequalities are defined for the (2,2) scenario only");
    }
    double c11 = c.value(1, 1), c12 = c.value(1, 2), c21 = c.value(2, 1),
           c22 = c.value(2, 2);
    return {
        c11 + c12 + c21 - c22,
        c11 + c12 - c21 + c22,
        c11 - c12 + c21 + c22,
        -c11 + c12 + c21 + c22,
    };
}

struct FineWitness {
    bool feasible = false;
    Eigen::VectorXd weights; // over strategy indices, present when feasible
};

inline constexpr int kMaxFineSettings = 16;

// Decides whether nonnegative weights over deterministic strategies exist
// that reproduce every pair correlation and sum to one.
inline FineWitness fine_feasible(const CorrelationTable& c, double tol = kLpTol) {
    const Scenario& sc = c.scenario();
    if (sc.num_a + sc.num_b > kMaxFineSettings) {
        throw ScenarioTooLarge("feasibility LP over 2^" + std::to_string(sc.num_a + sc.num_b) +
                               " strategies exceeds the practical cap of 2^" +
                               std::to_string(kMaxFineSettings));
    }
    const std::uint64_t count = std::uint64_t(1) << (sc.num_a + sc.num_b);
    const Eigen::Index rows = sc.num_a * sc.num_b + 1;

    Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(count));
    Eigen::VectorXd b(rows);
    for (std::uint64_t index = 0; index < count; ++index) {
        auto s = DeterministicStrategy::from_index(sc, index);
        Eigen::Index row = 0;
        for (int i = 1; i <= sc.num_a; ++i) {
            for (int j = 1; j <= sc.num_b; ++j) {
                a(row++, static_cast<Eigen::Index>(index)) =
                    s.a_values[static_cast<std::size_t>(i - 1)] *
                    s.b_values[static_cast<std::size_t>(j - 1)];
            }
        }
        a(row, static_cast<Eigen::Index>(index)) = 1.0;
    }
    {
        Eigen::Index row = 0;
        for (int i = 1; i <= sc.num_a; ++i)
            for (int j = 1; j <= sc.num_b; ++j) b(row++) = c.value(i, j);
        b(rows - 1) = 1.0;
    }

    Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count));
    LpSolution sol = solve_equality_lp(a, b, zero, false, tol);
    if (sol.status != LpStatus::Optimal) return {false, {}};
    return {true, sol.x};
}

inline void write_correlation_csv(std::ostream& out, const CorrelationTable& c) {
    out << "aIndex,bIndex,value\n";
    for (int i = 1; i <= c.scenario().num_a; ++i) {
        for (int j = 1; j <= c.scenario().num_b; ++j) {
            out << i << "," << j << "," << format_number(c.value(i, j)) << "\n";
        }
    }
}

inline CorrelationTable read_correlation_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty correlation file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "aIndex,bIndex,value") {
        throw ParseError("expected header 'aIndex,bIndex,value', got '" + line + "'");
    }

    struct Entry {
        int a, b;
        double v;
    };
    std::vector<Entry> entries;
    int max_a = 0, max_b = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string a_tok, b_tok, v_tok;
        if (!std::getline(fields, a_tok, ',') || !std::getline(fields, b_tok, ',') ||
            !std::getline(fields, v_tok)) {
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected 'aIndex,bIndex,value'");
        }
        Entry e{};
        try {
            e.a = std::stoi(a_tok);
            e.b = std::stoi(b_tok);
            e.v = std::stod(v_tok);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad field in '" + line + "'");
        }
        if (e.a < 1 || e.b < 1) {
            throw MalformedTable("line " + std::to_string(lineno) + ": indices must be >= 1");
        }
        max_a = std::max(max_a, e.a);
        max_b = std::max(max_b, e.b);
        entries.push_back(e);
    }
    if (entries.empty()) throw ParseError("correlation file has no data rows");

    Scenario sc(max_a, max_b);
    Eigen::MatrixXd values(max_a, max_b);
    Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(max_a, max_b);
    for (const auto& e : entries) {
        if (seen(e.a - 1, e.b - 1)++) {
            throw MalformedTable("duplicate entry for (" + std::to_string(e.a) + "," +
                                 std::to_string(e.b) + ")");
        }
        values(e.a - 1, e.b - 1) = e.v;
    }
    if ((seen.array() == 0).any()) {
        throw MalformedTable("correlation table is missing entries for scenario (" +
                             std::to_string(max_a) + "," + std::to_string(max_b) + ")");
    }
    return CorrelationTable(sc, std::move(values));
}

} // namespace bellforge
