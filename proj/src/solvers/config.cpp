#include "sid/solvers/config.hpp"

#include <cmath>

namespace sid {

std::string to_string(Termination t) {
    switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::exact_breakdown_solution: return "exact_breakdown_solution";
    }
    return "unknown";
}

void SolverConfig::validate(const IntervalPair* interval) const {
    if (!(tol > 0.0)) throw InvalidArgumentError("SolverConfig: tol must be positive");
    if (max_iter < 1) throw InvalidArgumentError("SolverConfig: max_iter must be >= 1");
    switch (beta.kind) {
    case BetaStrategy::Kind::fixed:
        if (!std::isfinite(beta.value))
            throw InvalidArgumentError("SolverConfig: fixed beta must be finite");
        if (interval && !(interval->b < beta.value && beta.value < interval->c))
            throw InvalidArgumentError("SolverConfig: fixed beta must lie in (b, c)");
        break;
    case BetaStrategy::Kind::normal_random:
        if (!(beta.stddev > 0.0))
            throw InvalidArgumentError("SolverConfig: normal beta needs stddev > 0");
        break;
    default:
        break;
    }
}

} // namespace sid
