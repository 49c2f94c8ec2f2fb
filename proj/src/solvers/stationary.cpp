#include <cmath>

#include "sid/solvers/solvers.hpp"
#include "solver_detail.hpp"

namespace sid {

SolveReport stationary_two_term(const SparseMatrix& A, const Preconditioner& T,
                                const Vector& f, const Vector& x0, double alpha, double beta,
                                int max_iter, ResidualMode residual_mode) {
    detail::check_system(A, T, f, x0);
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidArgumentError("stationary_two_term: alpha must be finite and >= 0");
    if (!std::isfinite(beta))
        throw InvalidArgumentError("stationary_two_term: beta must be finite");
    if (max_iter < 1) throw InvalidArgumentError("stationary_two_term: max_iter must be >= 1");

    const index_t n = A.dim();
    const bool track_true = residual_mode == ResidualMode::true_tnorm;

    Instrumentation inst;
    SolveReport report;
    detail::TraceRecorder rec{report, inst};

    Vector x = inst.alloc_vector(n);
    Vector w = inst.alloc_vector(n);
    Vector s = inst.alloc_vector(n);
    Vector l = inst.alloc_vector(n);
    Vector q = inst.alloc_vector(n);
    std::copy(x0.begin(), x0.end(), x.begin());

    Vector r;
    if (track_true) r = inst.alloc_vector(n);

    spmv(A, x, l, inst);
    for (index_t i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] =
        f[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(i)];
    if (track_true) r = l;
    T.apply(l, w, inst);

    rec.push(detail::residual_measure(residual_mode, r, w, inst));

    for (int iter = 0; iter < max_iter; ++iter) {
        spmv(A, w, l, inst);                 // l = A w
        T.apply(l, s, inst);                 // s = T A w
        kernels::add_scaled(s, -beta, w, l); // l = s - beta w
        spmv(A, l, s, inst);                 // s = A l
        T.apply(s, q, inst);                 // q = T A l

        kernels::axpy(alpha, l, x);
        if (track_true) kernels::axpy(-alpha, s, r);
        kernels::axpy(-alpha, q, w);

        rec.push(detail::residual_measure(residual_mode, r, w, inst));
        if (!std::isfinite(report.trace.back()))
            throw NumericalError("stationary_two_term: residual is non-finite");
    }

    detail::finalize(report, inst, std::move(x), Termination::max_iter);
    return report;
}

} // namespace sid
