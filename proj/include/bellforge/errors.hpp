#pragma once

#include <stdexcept>
#include <string>

namespace bellforge {

// Error types thrown by the library. Input/shape problems derive from
// std::invalid_argument, runtime failures from std::runtime_error.

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotHermitian : std::invalid_argument {
    explicit NotHermitian(const std::string& what) : std::invalid_argument(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct NonUnitVector : std::invalid_argument {
    explicit NonUnitVector(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroVector : std::invalid_argument {
    explicit ZeroVector(const std::string& what) : std::invalid_argument(what) {}
};

struct NotDensityMatrix : std::invalid_argument {
    explicit NotDensityMatrix(const std::string& what) : std::invalid_argument(what) {}
};

struct ScenarioMismatch : std::invalid_argument {
    explicit ScenarioMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ScenarioTooLarge : std::invalid_argument {
    explicit ScenarioTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct MalformedTable : std::invalid_argument {
    explicit MalformedTable(const std::string& what) : std::invalid_argument(what) {}
};

struct MalformedInterval : std::invalid_argument {
    explicit MalformedInterval(const std::string& what) : std::invalid_argument(what) {}
};

struct NonCommutingSeed : std::invalid_argument {
    explicit NonCommutingSeed(const std::string& what) : std::invalid_argument(what) {}
};

struct IncompletePairing : std::invalid_argument {
    explicit IncompletePairing(const std::string& what) : std::invalid_argument(what) {}
};

struct VerificationFailed : std::runtime_error {
    explicit VerificationFailed(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace bellforge
