#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bellforge/bell_polynomial.hpp"
#include "bellforge/forge.hpp"
#include "bellforge/linalg.hpp"
#include "bellforge/pauli.hpp"
#include "bellforge/quantum.hpp"

using namespace bellforge;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

CommutingSeed chsh_seed() {
    return CommutingSeed({{kSqrt2, PauliAxis::Z, PauliAxis::Z},
                          {kSqrt2, PauliAxis::X, PauliAxis::X}});
}

CommutingSeed isotropic_seed() {
    return CommutingSeed({{2 * kSqrt2, PauliAxis::X, PauliAxis::X},
                          {2 * kSqrt2, PauliAxis::Y, PauliAxis::Y},
                          {2 * kSqrt2, PauliAxis::Z, PauliAxis::Z}});
}

PairingScheme cyclic_scheme() {
    return PairingScheme({{PauliAxis::Y, PauliAxis::Z},
                          {PauliAxis::Z, PauliAxis::X},
                          {PauliAxis::X, PauliAxis::Y}});
}

} // namespace

TEST_CASE("axis helpers") {
    CHECK((axis_matrix(PauliAxis::X) - pauli_x()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(axis_vector(PauliAxis::Y) == Eigen::Vector3d(0, 1, 0));
    CHECK(axis_name(PauliAxis::Z) == 'Z');
    CHECK(parse_axis("x") == PauliAxis::X);
    CHECK(parse_axis("Z") == PauliAxis::Z);
    CHECK_THROWS_AS(parse_axis("Q"), ParseError);
    CHECK_THROWS_AS(parse_axis("XY"), ParseError);
}

TEST_CASE("seeds must commute termwise") {
    CHECK_NOTHROW(chsh_seed());
    CHECK_NOTHROW(isotropic_seed());
    CHECK_THROWS_AS(CommutingSeed({{1.0, PauliAxis::Z, PauliAxis::Z},
                                   {1.0, PauliAxis::X, PauliAxis::Z}}),
                    NonCommutingSeed);
    CHECK_THROWS_AS(CommutingSeed({}), ParseError);
}

TEST_CASE("seed spectrum bounds and naive candidates") {
    SpectrumBound chsh = seed_spectrum_bound(chsh_seed());
    CHECK(chsh.bounds.lo == doctest::Approx(-2 * kSqrt2).epsilon(1e-12));
    CHECK(chsh.bounds.hi == doctest::Approx(2 * kSqrt2).epsilon(1e-12));
    REQUIRE(chsh.naive_candidates.size() == 3);
    CHECK(chsh.naive_candidates[0] == doctest::Approx(-2 * kSqrt2).epsilon(1e-14));
    CHECK(chsh.naive_candidates[1] == doctest::Approx(0.0));
    CHECK(chsh.naive_candidates[2] == doctest::Approx(2 * kSqrt2).epsilon(1e-14));

    SpectrumBound iso = seed_spectrum_bound(isotropic_seed());
    CHECK(iso.bounds.lo == doctest::Approx(-6 * kSqrt2).epsilon(1e-12));
    CHECK(iso.bounds.hi == doctest::Approx(2 * kSqrt2).epsilon(1e-12));
    REQUIRE(iso.naive_candidates.size() == 4);
    CHECK(iso.naive_candidates[0] == doctest::Approx(-6 * kSqrt2).epsilon(1e-14));
    CHECK(iso.naive_candidates[3] == doctest::Approx(6 * kSqrt2).epsilon(1e-14));

    SpectrumBound single =
        seed_spectrum_bound(CommutingSeed({{1.0, PauliAxis::Z, PauliAxis::Z}}));
    CHECK(single.bounds.lo == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(single.bounds.hi == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pairing schemes validate their pairs") {
    CHECK_THROWS_AS(PairingScheme({{PauliAxis::Z, PauliAxis::Z}}), ParseError);
    CHECK_THROWS_AS(PairingScheme({}), ParseError);
    CHECK_NOTHROW(PairingScheme({{PauliAxis::Z, PauliAxis::X}}));
}

TEST_CASE("forging the 2x2 seed reproduces the 4-term polynomial exactly") {
    ForgeReport report = forge(chsh_seed(), PairingScheme({{PauliAxis::Z, PauliAxis::X}}));

    CHECK(approx_equal(report.polynomial, chsh_polynomial(), 0.0));
    CHECK(report.verification_error < 1e-12);
    CHECK(report.lhv.bounds.lo == -2.0);
    CHECK(report.lhv.bounds.hi == 2.0);
    CHECK(report.quantum_bounds.lo == doctest::Approx(-2 * kSqrt2).epsilon(1e-10));
    CHECK(report.quantum_bounds.hi == doctest::Approx(2 * kSqrt2).epsilon(1e-10));
    CHECK(report.type == TestType::Type1);

    ObservableFamily reference = family_s();
    double q = report.construction_theta;
    for (int i = 1; i <= 2; ++i) {
        CHECK((report.family.a_matrix(i, q) - reference.a_matrix(i, q))
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
    for (int j = 1; j <= 2; ++j) {
        CHECK((report.family.b_matrix(j, q) - reference.b_matrix(j, q))
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
}

TEST_CASE("forging the isotropic seed reproduces the 12-term polynomial exactly") {
    ForgeReport report = forge(isotropic_seed(), cyclic_scheme());

    CHECK(approx_equal(report.polynomial, t_polynomial(), 0.0));
    CHECK(report.verification_error < 1e-12);
    CHECK(report.lhv.bounds.lo == -6.0);
    CHECK(report.lhv.bounds.hi == 6.0);
    CHECK(report.lhv.value_set == std::vector<double>{-6.0, -2.0, 2.0, 6.0});
    CHECK(report.quantum_bounds.lo == doctest::Approx(-6 * kSqrt2).epsilon(1e-10));
    CHECK(report.quantum_bounds.hi == doctest::Approx(2 * kSqrt2).epsilon(1e-10));
    CHECK(report.type == TestType::Type2);

    Eigen::VectorXd assembled_eigs = hermitian_eigenvalues(
        assemble(report.polynomial, report.family, report.construction_theta));
    Eigen::VectorXd seed_eigs = hermitian_eigenvalues(isotropic_seed().matrix());
    CHECK((assembled_eigs - seed_eigs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("a rotated scheme order forges a relabeled but equivalent polynomial") {
    PairingScheme rotated({{PauliAxis::X, PauliAxis::Y},
                           {PauliAxis::Y, PauliAxis::Z},
                           {PauliAxis::Z, PauliAxis::X}});
    ForgeReport report = forge(isotropic_seed(), rotated);

    CHECK(report.polynomial.size() == 12);
    CHECK(report.verification_error < 1e-12);
    CHECK(report.lhv.bounds.lo == -6.0);
    CHECK(report.lhv.bounds.hi == 6.0);
    CHECK(report.quantum_bounds.lo == doctest::Approx(-6 * kSqrt2).epsilon(1e-10));
    CHECK(report.quantum_bounds.hi == doctest::Approx(2 * kSqrt2).epsilon(1e-10));
    CHECK(report.type == TestType::Type2);
    CHECK_FALSE(approx_equal(report.polynomial, t_polynomial(), 1e-12));
}

TEST_CASE("forging a single term spreads it over the pair") {
    CommutingSeed seed({{1.0, PauliAxis::Z, PauliAxis::Z}});
    ForgeReport report = forge(seed, PairingScheme({{PauliAxis::Z, PauliAxis::X}}));

    // Hand expansion: z = ((z+x) + (z-x)) / 2, each factor carrying 1/sqrt2
    // after normalizing the two directions.
    REQUIRE(report.polynomial.size() == 2);
    CHECK(report.polynomial.coefficient(1, 1) == doctest::Approx(1 / kSqrt2).epsilon(1e-15));
    CHECK(report.polynomial.coefficient(1, 2) == doctest::Approx(1 / kSqrt2).epsilon(1e-15));
    CHECK(report.verification_error < 1e-12);

    CHECK(report.lhv.bounds.lo == doctest::Approx(-kSqrt2).epsilon(1e-14));
    CHECK(report.lhv.bounds.hi == doctest::Approx(kSqrt2).epsilon(1e-14));
    REQUIRE(report.lhv.value_set.size() == 3);
    CHECK(report.lhv.value_set[1] == doctest::Approx(0.0));

    CHECK(report.quantum_bounds.lo == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(report.quantum_bounds.hi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.type == TestType::Type3);
}

TEST_CASE("forge rejects seeds whose B axis is not paired") {
    CommutingSeed seed({{1.0, PauliAxis::X, PauliAxis::Y}});
    CHECK_THROWS_AS(forge(seed, PairingScheme({{PauliAxis::Z, PauliAxis::X}})),
                    IncompletePairing);
}

TEST_CASE("classification of the published interval pairs") {
    Interval h_s{-2, 2};
    Interval q_s{-2 * kSqrt2, 2 * kSqrt2};
    CHECK(classify(h_s, q_s) == TestType::Type1);

    Interval h_t{-6, 6};
    Interval q_t{-6 * kSqrt2, 2 * kSqrt2};
    CHECK(classify(h_t, q_t) == TestType::Type2);

    CHECK(classify({0, 1}, {2, 3}) == TestType::Type4);
    CHECK(classify({2, 3}, {0, 1}) == TestType::Type4);
    CHECK(classify({-1, 10}, {0, 1}) == TestType::Type3);
    CHECK(classify({0, 5}, {-1, 3}) == TestType::Type2);
    CHECK(classify({0, 5}, {1, 7}) == TestType::Type2);
}

TEST_CASE("boundary ties classify as degenerate") {
    CHECK(classify({0, 1}, {0, 2}) == TestType::Degenerate);
    CHECK(classify({0, 1}, {-1, 1}) == TestType::Degenerate);
    CHECK(classify({0, 1}, {-1, 0}) == TestType::Degenerate);
    CHECK(classify({0, 1}, {1, 2}) == TestType::Degenerate);
    CHECK(classify({0, 1}, {1e-10, 2}) == TestType::Degenerate);
    CHECK(classify({0, 1}, {0, 1}) == TestType::Degenerate);
}

TEST_CASE("classification ignores affine rescaling") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> point(-5.0, 5.0);
    std::uniform_real_distribution<double> scale(0.5, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a = point(rng), b = point(rng), c = point(rng), d = point(rng);
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        double alpha = scale(rng), beta = point(rng);

        TestType plain = classify({a, b}, {c, d});
        TestType mapped = classify({alpha * a + beta, alpha * b + beta},
                                   {alpha * c + beta, alpha * d + beta},
                                   1e-12);
        if (plain != TestType::Degenerate) CHECK(plain == mapped);
    }
}

TEST_CASE("malformed intervals are rejected") {
    CHECK_THROWS_AS(classify({2, 1}, {0, 1}), MalformedInterval);
    CHECK_THROWS_AS(classify({0, 1}, {1, 0}), MalformedInterval);
    double nan = std::nan("");
    CHECK_THROWS_AS(classify({nan, 1}, {0, 1}), MalformedInterval);
}

TEST_CASE("seed files parse with comments and case folding") {
    std::istringstream in("# comment\n1.5 z z\n\n-0.5 X y\n");
    CommutingSeed seed = parse_seed(in);
    REQUIRE(seed.terms().size() == 2);
    CHECK(seed.terms()[0].coeff == 1.5);
    CHECK(seed.terms()[0].a_axis == PauliAxis::Z);
    CHECK(seed.terms()[1].b_axis == PauliAxis::Y);

    std::istringstream bad_coeff("abc Z Z\n");
    CHECK_THROWS_AS(parse_seed(bad_coeff), ParseError);
    std::istringstream missing("1.0 Z\n");
    CHECK_THROWS_AS(parse_seed(missing), ParseError);
    std::istringstream trailing("1.0 Z Z Z\n");
    CHECK_THROWS_AS(parse_seed(trailing), ParseError);
    std::istringstream none("# only comments\n");
    CHECK_THROWS_AS(parse_seed(none), ParseError);
}

TEST_CASE("scheme files parse with comments") {
    std::istringstream in("# pairs\ny z\nZ X\n");
    PairingScheme scheme = parse_scheme(in);
    REQUIRE(scheme.pairs().size() == 2);
    CHECK(scheme.pairs()[0].first == PauliAxis::Y);
    CHECK(scheme.pairs()[1].second == PauliAxis::X);

    std::istringstream missing("Z\n");
    CHECK_THROWS_AS(parse_scheme(missing), ParseError);
    std::istringstream same("Z Z\n");
    CHECK_THROWS_AS(parse_scheme(same), ParseError);
}
