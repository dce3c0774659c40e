#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "bellforge/bell_polynomial.hpp"
#include "bellforge/forge.hpp"
#include "bellforge/format.hpp"
#include "bellforge/lhv.hpp"
#include "bellforge/pauli.hpp"
#include "bellforge/quantum.hpp"

namespace {

namespace bf = bellforge;
namespace fs = std::filesystem;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OperatorChoice {
    bf::BellPolynomial polynomial;
    bf::ObservableFamily family;
};

OperatorChoice pick_operator(const std::string& name) {
    if (name == "s") return {bf::chsh_polynomial(), bf::family_s()};
    return {bf::t_polynomial(), bf::family_t()};
}

std::string interval_text(const bf::Interval& iv) {
    return "[" + bf::format_number(iv.lo) + ", " + bf::format_number(iv.hi) + "]";
}

std::string value_list_text(const std::vector<double>& values) {
    std::string out;
    for (double v : values) {
        if (!out.empty()) out += ", ";
        out += bf::format_number(v);
    }
    return out;
}

void write_text_atomically(const fs::path& target, const std::string& content) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.flush()) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot move output into place at '" + target.string() + "': " +
                      ec.message());
    }
}

std::string band_csv(const std::string& op, int steps) {
    OperatorChoice choice = pick_operator(op);
    bf::Interval hlv = bf::lhv_expectation_bounds(choice.polynomial);

    std::ostringstream out;
    out << "theta,q_lo,q_hi,h_lo,h_hi,singlet,chi\n";
    double step = 2.0 * std::numbers::pi / (steps - 1);
    for (int k = 0; k < steps; ++k) {
        bf::BandSample sample = bf::band_sample(choice.polynomial, choice.family, k * step);
        out << bf::format_number(sample.theta) << "," << bf::format_number(sample.quantum.lo)
            << "," << bf::format_number(sample.quantum.hi) << "," << bf::format_number(hlv.lo)
            << "," << bf::format_number(hlv.hi) << "," << bf::format_number(sample.singlet)
            << "," << bf::format_number(sample.chi) << "\n";
    }
    return out.str();
}

int cmd_band(const std::string& op, int steps, const std::string& out_path) {
    std::string csv = band_csv(op, steps);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_text_atomically(out_path, csv);
    }
    return 0;
}

int cmd_bounds(const std::string& op, int grid) {
    OperatorChoice choice = pick_operator(op);
    bf::LhvVerdict lhv = bf::enumerate_lhv(choice.polynomial);
    bf::Interval global = bf::global_quantum_range(choice.polynomial, choice.family, grid);
    bf::Interval at_quarter =
        bf::quantum_band(choice.polynomial, choice.family, std::numbers::pi / 4);

    std::cout << "operator: " << op << "\n"
              << "hidden-variable bounds: " << interval_text(lhv.bounds) << "\n"
              << "hidden-variable values: " << value_list_text(lhv.value_set) << "\n"
              << "quantum global range (grid " << grid << "): " << interval_text(global)
              << "\n"
              << "quantum band at theta=pi/4: " << interval_text(at_quarter) << "\n";
    return 0;
}

int cmd_classify(const std::string& op, double theta, bool degrees) {
    if (degrees) theta *= std::numbers::pi / 180.0;
    OperatorChoice choice = pick_operator(op);
    bf::Interval hlv = bf::lhv_expectation_bounds(choice.polynomial);
    bf::Interval band = bf::quantum_band(choice.polynomial, choice.family, theta);
    bf::TestType type = bf::classify(hlv, band);

    std::cout << "theta: " << bf::format_number(theta) << "\n"
              << "hidden-variable bounds: " << interval_text(hlv) << "\n"
              << "quantum band: " << interval_text(band) << "\n"
              << "type: " << bf::to_string(type) << "\n";
    return 0;
}

int cmd_fine(const std::string& csv_path, const std::string& witness_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + csv_path + "'");
    bf::CorrelationTable table = bf::read_correlation_csv(in);

    if (table.scenario() == bf::Scenario(2, 2)) {
        auto combos = bf::fine_inequalities(table);
        for (std::size_t i = 0; i < combos.size(); ++i) {
            bool ok = std::abs(combos[i]) <= 2.0 + 1e-9;
            std::cout << "combination " << i + 1 << ": " << bf::format_number(combos[i])
                      << (ok ? "" : "  (outside [-2, 2])") << "\n";
        }
    }

    bf::FineWitness witness = bf::fine_feasible(table);
    std::cout << (witness.feasible ? "FEASIBLE" : "INFEASIBLE")
              << ": a hidden-variable distribution reproducing the correlations "
              << (witness.feasible ? "exists" : "does not exist") << "\n";
    if (!witness.feasible) return 0;

    std::ostringstream w;
    w << "strategyIndex,weight\n";
    for (Eigen::Index i = 0; i < witness.weights.size(); ++i) {
        if (witness.weights(i) > 1e-15) {
            w << i << "," << bf::format_number(witness.weights(i)) << "\n";
        }
    }
    if (witness_path.empty()) {
        std::cout << "witness distribution:\n" << w.str();
    } else {
        write_text_atomically(witness_path, w.str());
        std::cout << "witness written to " << witness_path << "\n";
    }
    return 0;
}

int cmd_forge(const std::string& seed_path, const std::string& scheme_path) {
    std::ifstream seed_in(seed_path, std::ios::binary);
    if (!seed_in) throw IoError("cannot open '" + seed_path + "'");
    bf::CommutingSeed seed = bf::parse_seed(seed_in);

    std::ifstream scheme_in(scheme_path, std::ios::binary);
    if (!scheme_in) throw IoError("cannot open '" + scheme_path + "'");
    bf::PairingScheme scheme = bf::parse_scheme(scheme_in);

    bf::ForgeReport report = bf::forge(seed, scheme);

    std::cout << "seed:\n";
    for (const auto& t : seed.terms()) {
        std::cout << "  " << bf::format_number(t.coeff) << " " << bf::axis_name(t.a_axis)
                  << " " << bf::axis_name(t.b_axis) << "\n";
    }
    std::cout << "polynomial (scenario " << report.polynomial.scenario().num_a << "x"
              << report.polynomial.scenario().num_b << ", "
              << report.polynomial.size() << " terms):\n";
    std::istringstream lines(bf::to_text(report.polynomial));
    for (std::string line; std::getline(lines, line);) std::cout << "  " << line << "\n";

    std::cout << "verification: max deviation " << bf::format_number(report.verification_error)
              << " at theta=pi/4\n"
              << "seed spectrum: " << interval_text(report.seed_spectrum.bounds)
              << " (naive candidates: "
              << value_list_text(report.seed_spectrum.naive_candidates) << ")\n"
              << "hidden-variable bounds: " << interval_text(report.lhv.bounds) << "\n"
              << "hidden-variable values: " << value_list_text(report.lhv.value_set) << "\n"
              << "quantum bounds: " << interval_text(report.quantum_bounds) << "\n"
              << "type: " << bf::to_string(report.type) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-inequality analysis: bands, bounds, classification, feasibility, "
                 "and polynomial forging"};
    app.require_subcommand(1);

    std::string op;
    int steps = bf::kDefaultGrid;
    std::string out_path;
    auto* band = app.add_subcommand("band", "Scan theta and emit quantum/classical band CSV");
    band->add_option("--operator", op, "Bell quantity: s (4-term) or t (12-term)")
        ->required()
        ->check(CLI::IsMember({"s", "t"}));
    band->add_option("--steps", steps, "Number of theta samples over [0, 2pi]")
        ->check(CLI::Range(2, 10000000));
    band->add_option("--out", out_path, "Output CSV path (stdout when omitted)");

    int grid = bf::kDefaultGrid;
    auto* bounds = app.add_subcommand("bounds", "Print classical and quantum bounds");
    bounds->add_option("--operator", op, "Bell quantity: s or t")
        ->required()
        ->check(CLI::IsMember({"s", "t"}));
    bounds->add_option("--grid", grid, "Theta grid size for the global quantum range")
        ->check(CLI::Range(2, 10000000));

    double theta = 0.0;
    bool degrees = false;
    auto* classify = app.add_subcommand("classify", "Classify the test type at an angle");
    classify->add_option("--operator", op, "Bell quantity: s or t")
        ->required()
        ->check(CLI::IsMember({"s", "t"}));
    classify->add_option("--theta", theta, "Detector angle")->required();
    classify->add_flag("--degrees", degrees, "Interpret --theta in degrees");

    std::string csv_path;
    std::string witness_path;
    auto* fine = app.add_subcommand("fine", "Check a correlation table for a hidden-variable "
                                            "distribution");
    fine->add_option("table", csv_path, "Correlation CSV (aIndex,bIndex,value)")->required();
    fine->add_option("--witness", witness_path, "Write the witness distribution to this path");

    std::string seed_path;
    std::string scheme_path;
    auto* forge = app.add_subcommand("forge", "Expand a commuting seed into a Bell polynomial");
    forge->add_option("--seed", seed_path, "Seed file: lines '<coeff> <A-axis> <B-axis>'")
        ->required();
    forge->add_option("--scheme", scheme_path, "Pairing file: lines '<p-axis> <q-axis>'")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (band->parsed()) return cmd_band(op, steps, out_path);
        if (bounds->parsed()) return cmd_bounds(op, grid);
        if (classify->parsed()) return cmd_classify(op, theta, degrees);
        if (fine->parsed()) return cmd_fine(csv_path, witness_path);
        if (forge->parsed()) return cmd_forge(seed_path, scheme_path);
    } catch (const bf::VerificationFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
