/// @file interval.hpp
/// @brief Pair of equal-length intervals [a,b] U [c,d] straddling zero,
///        enclosing the spectrum of a preconditioned indefinite operator.

#ifndef SID_THEORY_INTERVAL_HPP
#define SID_THEORY_INTERVAL_HPP

#include <cmath>

#include "sid/core/types.hpp"

namespace sid {

/// Endpoints a <= b < 0 < c <= d with b - a == d - c (to 1e-12 absolute).
/// Validated on construction.
struct IntervalPair {
    double a;
    double b;
    double c;
    double d;

    IntervalPair(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!(a <= b) || !(b < 0.0) || !(0.0 < c) || !(c <= d))
            throw InvalidArgumentError("IntervalPair: need a <= b < 0 < c <= d");
        if (std::abs((b - a) - (d - c)) > 1e-12)
            throw InvalidArgumentError("IntervalPair: intervals must have equal length");
    }

    double negative_length() const { return b - a; }
    double positive_length() const { return d - c; }

    bool contains(double lambda) const {
        return (lambda >= a && lambda <= b) || (lambda >= c && lambda <= d);
    }
};

} // namespace sid

#endif // SID_THEORY_INTERVAL_HPP
