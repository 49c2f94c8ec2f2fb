/// Internal helpers shared by the solver implementations.

#ifndef SID_SRC_SOLVERS_SOLVER_DETAIL_HPP
#define SID_SRC_SOLVERS_SOLVER_DETAIL_HPP

#include <cmath>

#include "sid/core/kernels.hpp"
#include "sid/core/sparse_matrix.hpp"
#include "sid/core/t_inner.hpp"
#include "sid/solvers/config.hpp"

namespace sid::detail {

/// Gram-determinant guard for breakdown detection.
inline constexpr double gram_eps = 1e-12;

inline void check_system(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                         const Vector& x0) {
    require_dim(static_cast<std::size_t>(T.dim()), static_cast<std::size_t>(A.dim()),
                "solver: preconditioner dim");
    require_dim(f.size(), static_cast<std::size_t>(A.dim()), "solver: rhs");
    require_dim(x0.size(), static_cast<std::size_t>(A.dim()), "solver: initial guess");
}

/// Residual measurement shared by the short-recurrence schemes. In true-T-norm
/// mode the caller maintains the residual vector r alongside w = T r, and the
/// norm costs a single monitoring inner product: ||r||_T^2 = (r, w).
inline double residual_measure(ResidualMode mode, const Vector& r, const Vector& w,
                               Instrumentation& inst) {
    if (mode == ResidualMode::true_tnorm) {
        const double raw = dot_monitor(r, w, inst);
        if (!std::isfinite(raw))
            throw NumericalError("solver: numerical failure (non-finite residual measure)");
        return std::sqrt(std::max(0.0, raw));
    }
    const double m = kernels::max_abs(w);
    if (!std::isfinite(m))
        throw NumericalError("solver: numerical failure (non-finite residual measure)");
    if (m == 0.0) {
        // max drops NaN components; an all-"zero" result must be genuine
        for (double v : w)
            if (std::isnan(v))
                throw NumericalError("solver: numerical failure (NaN residual)");
    }
    return m;
}

struct TraceRecorder {
    SolveReport& report;
    Instrumentation& inst;

    void push(double measure) {
        report.trace.push_back(measure);
        report.trace_counters.push_back(inst.counters);
    }
};

inline void finalize(SolveReport& report, Instrumentation& inst, Vector x, Termination term) {
    report.solution = std::move(x);
    report.termination = term;
    report.counters = inst.counters;
    report.work_vectors = inst.work_vectors();
}

} // namespace sid::detail

#endif // SID_SRC_SOLVERS_SOLVER_DETAIL_HPP
