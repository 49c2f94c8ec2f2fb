#include <cmath>

#include "sid/solvers/solvers.hpp"
#include "solver_detail.hpp"

namespace sid {

using detail::gram_eps;

SolveReport psdi(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                 const Vector& x0, const SolverConfig& cfg) {
    detail::check_system(A, T, f, x0);
    cfg.validate();

    const index_t n = A.dim();
    const bool track_true = cfg.residual_mode == ResidualMode::true_tnorm;

    Instrumentation inst;
    SolveReport report;
    detail::TraceRecorder rec{report, inst};

    // Working set: x, w, l, s, q (five vectors). True-T-norm tracking adds the
    // residual r and a copy of A w, the two extra vectors that make
    // ||r||_T = (r, w) available for one monitoring inner product.
    Vector x = inst.alloc_vector(n);
    Vector w = inst.alloc_vector(n);
    Vector l = inst.alloc_vector(n);
    Vector s = inst.alloc_vector(n);
    Vector q = inst.alloc_vector(n);
    std::copy(x0.begin(), x0.end(), x.begin());

    Vector r, aw;
    if (track_true) {
        r = inst.alloc_vector(n);
        aw = inst.alloc_vector(n);
    }

    // w = T (f - A x)
    spmv(A, x, l, inst);
    for (index_t i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] =
        f[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(i)];
    if (track_true) r = l;
    T.apply(l, w, inst);

    rec.push(detail::residual_measure(cfg.residual_mode, r, w, inst));
    if (report.trace[0] == 0.0) {
        detail::finalize(report, inst, std::move(x), Termination::converged);
        return report;
    }
    const double target = cfg.tol * report.trace[0];

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        spmv(A, w, l, inst); // l = A w
        if (track_true) aw = l;
        IterationScalars sc;
        sc.xi = dot(w, l, inst);
        T.apply(l, s, inst); // s = T A w

        spmv(A, s, l, inst); // l = A s
        T.apply(l, q, inst); // q = T A s
        sc.nu = dot(l, q, inst);
        sc.mu = dot(w, l, inst);
        sc.eta = dot(s, l, inst);

        if (!std::isfinite(sc.xi) || !std::isfinite(sc.nu) || !std::isfinite(sc.mu) ||
            !std::isfinite(sc.eta))
            throw NumericalError("psdi: numerical failure (non-finite iteration scalars)");

        if (!sc.breakdown(gram_eps)) {
            const double det = sc.gram();
            const double beta = (sc.xi * sc.nu - sc.mu * sc.eta) / det;
            const double alpha = (sc.mu * sc.mu - sc.xi * sc.eta) / det;
            if (!std::isfinite(beta) || !std::isfinite(alpha))
                throw NumericalError("psdi: numerical failure (non-finite parameters)");

            kernels::axpy2(beta, w, alpha, s, x);
            if (track_true) kernels::axpy2(-beta, aw, -alpha, l, r);
            kernels::axpy2(-beta, s, -alpha, q, w);

            rec.push(detail::residual_measure(cfg.residual_mode, r, w, inst));
            if (report.trace.back() <= target) {
                detail::finalize(report, inst, std::move(x), Termination::converged);
                return report;
            }
        } else {
            // w and s collinear: the exact solution is reachable along w.
            // mu = (Aw, TAw) vanishes only when w (hence r) is already zero.
            if (!(sc.mu > 0.0)) {
                rec.push(0.0);
                detail::finalize(report, inst, std::move(x), Termination::converged);
                return report;
            }
            const double beta = sc.xi / sc.mu;
            kernels::axpy(beta, w, x);
            if (track_true) kernels::axpy(-beta, aw, r);
            kernels::axpy(-beta, s, w);

            rec.push(detail::residual_measure(cfg.residual_mode, r, w, inst));
            detail::finalize(report, inst, std::move(x), Termination::exact_breakdown_solution);
            return report;
        }
    }

    detail::finalize(report, inst, std::move(x), Termination::max_iter);
    return report;
}

} // namespace sid
