#include <algorithm>
#include <cmath>

#include "sid/solvers/solvers.hpp"
#include "solver_detail.hpp"

namespace sid {

namespace {

/// Preconditioned MINRES in the classic Lanczos-plus-plane-rotations form.
/// The three-vector shuffle r1/r2/y carries the unnormalized Lanczos vectors
/// in residual space; v holds the normalized preconditioned vector; w/w1/w2
/// carry the search-direction recurrence. |phibar| after step j equals the
/// residual T-norm of the current iterate, so monitoring is free.
///
/// When abs_target >= 0 it overrides the relative test; the restarted wrapper
/// uses this to keep convergence relative to the residual before the first
/// cycle.
SolveReport pminres_impl(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                         const Vector& x0, const SolverConfig& cfg, double abs_target) {
    detail::check_system(A, T, f, x0);
    cfg.validate();

    const index_t n = A.dim();

    Instrumentation inst;
    SolveReport report;
    detail::TraceRecorder rec{report, inst};

    Vector x = inst.alloc_vector(n);
    Vector r1 = inst.alloc_vector(n);
    Vector r2 = inst.alloc_vector(n);
    Vector y = inst.alloc_vector(n);
    Vector v = inst.alloc_vector(n);
    Vector w = inst.alloc_vector(n);
    Vector w1 = inst.alloc_vector(n);
    Vector w2 = inst.alloc_vector(n);
    std::copy(x0.begin(), x0.end(), x.begin());

    // r1 = f - A x, y = T r1, beta1 = sqrt((r1, y))
    spmv(A, x, r1, inst);
    for (index_t i = 0; i < n; ++i) r1[static_cast<std::size_t>(i)] =
        f[static_cast<std::size_t>(i)] - r1[static_cast<std::size_t>(i)];
    T.apply(r1, y, inst);
    const double beta1sq = dot(r1, y, inst);
    if (!std::isfinite(beta1sq))
        throw NumericalError("pminres: numerical failure (non-finite setup residual)");
    if (beta1sq < 0.0)
        throw NotSpdError("pminres: (r, Tr) < 0; preconditioner is not SPD");
    const double beta1 = std::sqrt(beta1sq);

    rec.push(beta1);
    if (beta1 == 0.0) {
        detail::finalize(report, inst, std::move(x), Termination::converged);
        return report;
    }
    const double target = abs_target >= 0.0 ? abs_target : cfg.tol * beta1;

    r2 = r1;

    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
    double phibar = beta1, cs = -1.0, sn = 0.0;

    for (int k = 1; k <= cfg.max_iter; ++k) {
        // Lanczos step
        const double inv_beta = 1.0 / beta;
        for (index_t i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] * inv_beta;
        spmv(A, v, y, inst);
        if (k >= 2) kernels::axpy(-beta / oldb, r1, y);
        const double alfa = dot(v, y, inst);
        kernels::axpy(-alfa / beta, r2, y);
        std::swap(r1, r2);
        std::swap(r2, y);
        T.apply(r2, y, inst);
        oldb = beta;
        double betasq = dot(r2, y, inst);
        if (betasq < 0.0) {
            if (betasq > -1e-28 * beta1sq) betasq = 0.0; // roundoff at exhaustion
            else throw NotSpdError("pminres: (v, Tv) < 0; preconditioner is not SPD");
        }
        beta = std::sqrt(betasq);
        if (!std::isfinite(alfa) || !std::isfinite(beta))
            throw NumericalError("pminres: non-finite Lanczos coefficients");

        // Plane rotation applied to the tridiagonal column
        const double oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        double gamma = std::hypot(gbar, beta);
        gamma = std::max(gamma, 1e-300);
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar = sn * phibar;

        // Search-direction recurrence and solution update
        std::swap(w1, w2);
        std::swap(w2, w);
        const double inv_gamma = 1.0 / gamma;
        for (index_t i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] =
                (v[static_cast<std::size_t>(i)] - oldeps * w1[static_cast<std::size_t>(i)] -
                 delta * w2[static_cast<std::size_t>(i)]) *
                inv_gamma;
        kernels::axpy(phi, w, x);

        rec.push(std::abs(phibar));
        if (report.trace.back() <= target) {
            detail::finalize(report, inst, std::move(x), Termination::converged);
            return report;
        }
        if (beta == 0.0)
            throw NumericalError("pminres: Lanczos breakdown with nonzero residual");
    }

    detail::finalize(report, inst, std::move(x), Termination::max_iter);
    return report;
}

} // namespace

SolveReport pminres(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                    const Vector& x0, const SolverConfig& cfg) {
    return pminres_impl(A, T, f, x0, cfg, -1.0);
}

SolveReport pminres_restarted(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                              const Vector& x0, int k, const SolverConfig& cfg) {
    if (k < 1) throw InvalidArgumentError("pminres_restarted: restart length must be >= 1");
    cfg.validate();

    SolveReport report;
    Vector x = x0;
    OpCounters accumulated;
    double abs_target = -1.0;
    int total_iters = 0;

    while (true) {
        SolverConfig inner = cfg;
        inner.max_iter = std::min(k, cfg.max_iter - total_iters);
        SolveReport cycle = pminres_impl(A, T, f, x, inner, abs_target);
        x = std::move(cycle.solution);
        total_iters += cycle.iterations();

        if (report.trace.empty()) {
            report.trace = cycle.trace;
            report.trace_counters = cycle.trace_counters;
            abs_target = cfg.tol * cycle.trace.front();
        } else {
            for (std::size_t i = 1; i < cycle.trace.size(); ++i) {
                report.trace.push_back(cycle.trace[i]);
                report.trace_counters.push_back(accumulated + cycle.trace_counters[i]);
            }
        }
        accumulated += cycle.counters;
        report.work_vectors = std::max(report.work_vectors, cycle.work_vectors);

        if (cycle.termination == Termination::converged) {
            report.termination = Termination::converged;
            break;
        }
        if (total_iters >= cfg.max_iter) {
            report.termination = Termination::max_iter;
            break;
        }
    }

    report.solution = std::move(x);
    report.counters = accumulated;
    return report;
}

} // namespace sid
