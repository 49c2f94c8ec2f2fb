/// @file config.hpp
/// @brief Solver configuration and the per-solve report.

#ifndef SID_SOLVERS_CONFIG_HPP
#define SID_SOLVERS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sid/core/types.hpp"
#include "sid/theory/interval.hpp"

namespace sid {

/// How the residual is tracked between iterations.
///  - true_tnorm: maintain the residual vector explicitly and record its exact
///    T-norm; costs one extra work vector (two for the two-term scheme) and
///    one separately tagged monitoring inner product per iteration.
///  - cheap_maxabs: use the largest-magnitude component of the preconditioned
///    residual, which the iterations hold anyway; adds nothing.
enum class ResidualMode { true_tnorm, cheap_maxabs };

enum class Termination { converged, max_iter, exact_breakdown_solution };

std::string to_string(Termination t);

/// Per-iteration choice of the direction parameter in the one-dimensional
/// scheme. `optimal` resolves to c - |b| from the supplied interval pair;
/// the randomized strategies draw from a seeded generator each iteration.
struct BetaStrategy {
    enum class Kind { fixed, optimal, uniform_random, normal_random };

    Kind kind = Kind::optimal;
    double value = 0.0;  // fixed
    double mean = 0.0;   // normal
    double stddev = 0.0; // normal

    static BetaStrategy fixed(double v) { return {Kind::fixed, v, 0.0, 0.0}; }
    static BetaStrategy optimal() { return {Kind::optimal, 0.0, 0.0, 0.0}; }
    static BetaStrategy uniform_random() { return {Kind::uniform_random, 0.0, 0.0, 0.0}; }
    static BetaStrategy normal_random(double mean, double stddev) {
        return {Kind::normal_random, 0.0, mean, stddev};
    }
};

struct SolverConfig {
    double tol = 1e-8; ///< relative: stop when trace[i] <= tol * trace[0]
    int max_iter = 1000;
    ResidualMode residual_mode = ResidualMode::true_tnorm;
    BetaStrategy beta = BetaStrategy::optimal();
    std::uint64_t rng_seed = 0;

    /// Throws InvalidArgumentError on nonsense. A fixed beta is checked
    /// against (b, c) when an interval is supplied.
    void validate(const IntervalPair* interval = nullptr) const;
};

/// Everything observable about one solve: the solution, the residual trace
/// (one entry per iteration plus the initial value), cumulative operation
/// counters snapshotted at every trace entry, and the storage tally.
struct SolveReport {
    Vector solution;
    std::vector<double> trace;
    std::vector<OpCounters> trace_counters;
    OpCounters counters;
    Termination termination = Termination::max_iter;
    std::int64_t work_vectors = 0;

    int iterations() const { return static_cast<int>(trace.size()) - 1; }
    double initial_residual() const { return trace.front(); }
    double final_residual() const { return trace.back(); }
};

} // namespace sid

#endif // SID_SOLVERS_CONFIG_HPP
