/// @file types.hpp
/// @brief Basic scalar/vector types, error hierarchy and the per-solve
///        instrumentation context.

#ifndef SID_CORE_TYPES_HPP
#define SID_CORE_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sid {

using index_t = std::int32_t;
using Vector  = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

/// Cholesky hit a non-positive pivot: the matrix is not SPD.
class NotSpdError : public Error {
public:
    explicit NotSpdError(const std::string& msg) : Error(msg) {}
};

/// NaN/Inf in iteration scalars, annihilated search direction, and similar.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

class OracleCapError : public Error {
public:
    explicit OracleCapError(const std::string& msg) : Error(msg) {}
};

/// The operator spectrum has one sign only; indefinite-solver machinery
/// (interval construction) does not apply.
class DefiniteSpectrumError : public Error {
public:
    explicit DefiniteSpectrumError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// Instrumentation
// ---------------------------------------------------------------------------

/// Exact tallies of the operations that dominate iterative-solver cost.
/// Residual monitoring is counted separately so that the algorithmic
/// inner-product rate of a solver stays visible regardless of the
/// residual-tracking mode.
struct OpCounters {
    std::int64_t matvecs                = 0;
    std::int64_t precs                  = 0;
    std::int64_t inner_products         = 0;
    std::int64_t monitor_inner_products = 0;

    OpCounters& operator+=(const OpCounters& o) {
        matvecs += o.matvecs;
        precs += o.precs;
        inner_products += o.inner_products;
        monitor_inner_products += o.monitor_inner_products;
        return *this;
    }
    friend OpCounters operator+(OpCounters a, const OpCounters& b) { return a += b; }
    friend OpCounters operator-(OpCounters a, const OpCounters& b) {
        a.matvecs -= b.matvecs;
        a.precs -= b.precs;
        a.inner_products -= b.inner_products;
        a.monitor_inner_products -= b.monitor_inner_products;
        return a;
    }
    friend bool operator==(const OpCounters& a, const OpCounters& b) {
        return a.matvecs == b.matvecs && a.precs == b.precs &&
               a.inner_products == b.inner_products &&
               a.monitor_inner_products == b.monitor_inner_products;
    }
};

/// Per-solve instrumentation context. Single-owner: every solve creates its
/// own and threads it through matvecs, preconditioner applications and inner
/// products, so audits are exact per solve and never touch global state.
/// Also counts the length-n work vectors a solver materializes.
class Instrumentation {
public:
    OpCounters counters;

    void count_matvec() { ++counters.matvecs; }
    void count_prec() { ++counters.precs; }
    void count_inner_product() { ++counters.inner_products; }
    void count_monitor_inner_product() { ++counters.monitor_inner_products; }

    /// Allocate a length-n work vector on behalf of a solver, bumping the
    /// storage tally used by the allocation audit.
    Vector alloc_vector(index_t n) {
        ++work_vectors_;
        return Vector(static_cast<std::size_t>(n), 0.0);
    }

    std::int64_t work_vectors() const { return work_vectors_; }

private:
    std::int64_t work_vectors_ = 0;
};

namespace detail {
inline void require_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(got) + " vs " + std::to_string(want) + ")");
}
} // namespace detail

} // namespace sid

#endif // SID_CORE_TYPES_HPP
