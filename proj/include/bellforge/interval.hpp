#pragma once

#include <cmath>
#include <string>

#include "bellforge/errors.hpp"

namespace bellforge {

// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x, double tol = 0.0) const {
        return x >= lo - tol && x <= hi + tol;
    }

    double width() const { return hi - lo; }
};

inline void require_valid(const Interval& iv, const std::string& label) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
        throw MalformedInterval(label + ": [" + std::to_string(iv.lo) + ", " +
                                std::to_string(iv.hi) + "] is not a valid interval");
    }
}

} // namespace bellforge
