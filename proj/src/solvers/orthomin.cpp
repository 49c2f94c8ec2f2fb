#include <cmath>

#include "sid/solvers/solvers.hpp"
#include "solver_detail.hpp"

namespace sid {

SolveReport orthomin1(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                      const Vector& x0, int max_iter, double tol) {
    detail::check_system(A, T, f, x0);
    if (max_iter < 1) throw InvalidArgumentError("orthomin1: max_iter must be >= 1");
    if (!(tol > 0.0)) throw InvalidArgumentError("orthomin1: tol must be positive");

    const index_t n = A.dim();

    Instrumentation inst;
    SolveReport report;
    detail::TraceRecorder rec{report, inst};

    Vector x = inst.alloc_vector(n);
    Vector r = inst.alloc_vector(n);
    Vector w = inst.alloc_vector(n);
    Vector z = inst.alloc_vector(n);
    Vector q = inst.alloc_vector(n);
    std::copy(x0.begin(), x0.end(), x.begin());

    spmv(A, x, r, inst);
    for (index_t i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] =
        f[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)];
    T.apply(r, w, inst);

    rec.push(detail::residual_measure(ResidualMode::true_tnorm, r, w, inst));
    if (report.trace[0] == 0.0) {
        detail::finalize(report, inst, std::move(x), Termination::converged);
        return report;
    }
    const double target = tol * report.trace[0];

    for (int iter = 0; iter < max_iter; ++iter) {
        spmv(A, w, z, inst); // z = A w
        T.apply(z, q, inst); // q = T A w

        // alpha minimizing ||r - alpha*Aw||_T: (r, TAw)/(Aw, TAw), and
        // (r, TAw) = (Tr, Aw) = (w, z) by symmetry of T.
        const double num = dot(w, z, inst);
        const double den = dot(z, q, inst);
        if (!std::isfinite(num) || !std::isfinite(den) || !(den > 0.0))
            throw NumericalError("orthomin1: step-length denominator vanished");
        const double alpha = num / den;

        kernels::axpy(alpha, w, x);
        kernels::axpy(-alpha, z, r);
        kernels::axpy(-alpha, q, w);

        rec.push(detail::residual_measure(ResidualMode::true_tnorm, r, w, inst));
        if (report.trace.back() <= target) {
            detail::finalize(report, inst, std::move(x), Termination::converged);
            return report;
        }
    }

    detail::finalize(report, inst, std::move(x), Termination::max_iter);
    return report;
}

} // namespace sid
