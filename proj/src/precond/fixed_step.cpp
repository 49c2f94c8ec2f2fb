#include "sid/precond/fixed_step.hpp"

#include <limits>
#include <utility>

#include "sid/solvers/solvers.hpp"

namespace sid {

namespace {

class FixedStepSolverPreconditioner final : public Preconditioner {
public:
    FixedStepSolverPreconditioner(SparseMatrix A, PreconditionerPtr inner,
                                  FixedStepSolverKind kind, int steps,
                                  std::optional<IntervalPair> interval, std::uint64_t seed)
        : Preconditioner(A.dim()),
          A_(std::move(A)),
          inner_(std::move(inner)),
          kind_(kind),
          interval_(interval) {
        cfg_.max_iter = steps;
        // Effectively "never converged by tolerance": the inner solve runs
        // its full step budget unless it lands on the exact solution.
        cfg_.tol = std::numeric_limits<double>::denorm_min();
        cfg_.residual_mode = ResidualMode::cheap_maxabs;
        cfg_.beta = BetaStrategy::uniform_random();
        cfg_.rng_seed = seed;
    }

private:
    void do_apply(std::span<const double> in, std::span<double> out) const override {
        const Vector rhs(in.begin(), in.end());
        const Vector zero(rhs.size(), 0.0);
        SolveReport rep;
        switch (kind_) {
        case FixedStepSolverKind::psdi:
            rep = psdi(A_, *inner_, rhs, zero, cfg_);
            break;
        case FixedStepSolverKind::psdi_1d:
            rep = psdi_1d(A_, *inner_, rhs, zero, cfg_, *interval_);
            break;
        case FixedStepSolverKind::pminres:
            rep = pminres(A_, *inner_, rhs, zero, cfg_);
            break;
        }
        std::copy(rep.solution.begin(), rep.solution.end(), out.begin());
    }

    SparseMatrix A_;
    PreconditionerPtr inner_;
    FixedStepSolverKind kind_;
    std::optional<IntervalPair> interval_;
    SolverConfig cfg_;
};

} // namespace

PreconditionerPtr fixed_step_solver_preconditioner(SparseMatrix A, PreconditionerPtr inner,
                                                   FixedStepSolverKind kind, int steps,
                                                   std::optional<IntervalPair> interval,
                                                   std::uint64_t seed) {
    if (steps < 1)
        throw InvalidArgumentError("fixed_step_solver_preconditioner: steps must be >= 1");
    if (!inner)
        throw InvalidArgumentError("fixed_step_solver_preconditioner: missing inner preconditioner");
    if (inner->dim() != A.dim())
        throw DimensionError("fixed_step_solver_preconditioner: dimension mismatch");
    if (kind == FixedStepSolverKind::psdi_1d && !interval)
        throw InvalidArgumentError(
            "fixed_step_solver_preconditioner: psdi_1d kind requires an interval");
    return std::make_shared<FixedStepSolverPreconditioner>(std::move(A), std::move(inner), kind,
                                                           steps, interval, seed);
}

} // namespace sid
