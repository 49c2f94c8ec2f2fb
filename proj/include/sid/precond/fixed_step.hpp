/// @file fixed_step.hpp
/// @brief Preconditioner defined by a fixed number of iterations of an inner
///        linear solver, for inner-outer schemes (e.g. preconditioned
///        interior eigensolvers working on shifted systems).

#ifndef SID_PRECOND_FIXED_STEP_HPP
#define SID_PRECOND_FIXED_STEP_HPP

#include <optional>

#include "sid/precond/preconditioners.hpp"
#include "sid/theory/interval.hpp"

namespace sid {

enum class FixedStepSolverKind { psdi, psdi_1d, pminres };

/// apply(r) returns the approximate solution of A w = r after exactly `steps`
/// iterations of the chosen solver from the zero initial guess, with
/// `inner` as its preconditioner. Deterministic given `seed`.
///
/// The composite operator is not certified SPD; it serves the inner-outer
/// pattern and is excluded from the SPD invariant checks.
///
/// `interval` is required for the psdi_1d kind (it needs the inner spectral
/// endpoints) and ignored otherwise.
PreconditionerPtr fixed_step_solver_preconditioner(
    SparseMatrix A, PreconditionerPtr inner, FixedStepSolverKind kind, int steps,
    std::optional<IntervalPair> interval = std::nullopt, std::uint64_t seed = 0);

} // namespace sid

#endif // SID_PRECOND_FIXED_STEP_HPP
