#include <cmath>

#include "sid/solvers/rng.hpp"
#include "sid/solvers/solvers.hpp"
#include "sid/theory/factors.hpp"
#include "solver_detail.hpp"

namespace sid {

namespace {

class BetaResolver {
public:
    BetaResolver(const BetaStrategy& strategy, const IntervalPair& interval, std::uint64_t seed)
        : strategy_(strategy), interval_(interval), rng_(seed) {}

    double next() {
        switch (strategy_.kind) {
        case BetaStrategy::Kind::fixed:
            return strategy_.value;
        case BetaStrategy::Kind::optimal:
            return beta_opt(interval_);
        case BetaStrategy::Kind::uniform_random:
            // beta = b + (c - b) * xi, xi uniform on (0, 1)
            return interval_.b + (interval_.c - interval_.b) * rng_.uniform();
        case BetaStrategy::Kind::normal_random:
            for (int attempt = 0; attempt < 100; ++attempt) {
                const double v = rng_.normal(strategy_.mean, strategy_.stddev);
                if (interval_.b < v && v < interval_.c) return v;
            }
            throw InvalidArgumentError(
                "psdi_1d: normal beta sampling failed to land in (b, c) after 100 draws");
        }
        throw InvalidArgumentError("psdi_1d: unknown beta strategy");
    }

private:
    BetaStrategy strategy_;
    IntervalPair interval_;
    Rng rng_;
};

} // namespace

SolveReport psdi_1d(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                    const Vector& x0, const SolverConfig& cfg, const IntervalPair& interval) {
    detail::check_system(A, T, f, x0);
    cfg.validate(&interval);

    const index_t n = A.dim();
    const bool track_true = cfg.residual_mode == ResidualMode::true_tnorm;
    BetaResolver beta_of(cfg.beta, interval, cfg.rng_seed);

    Instrumentation inst;
    SolveReport report;
    detail::TraceRecorder rec{report, inst};

    // Working set: x, w, s, l, q. True-T-norm tracking adds r; the vector
    // A l needed for its update is held in s at update time.
    Vector x = inst.alloc_vector(n);
    Vector w = inst.alloc_vector(n);
    Vector s = inst.alloc_vector(n);
    Vector l = inst.alloc_vector(n);
    Vector q = inst.alloc_vector(n);
    std::copy(x0.begin(), x0.end(), x.begin());

    Vector r;
    if (track_true) r = inst.alloc_vector(n);

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
        T.apply(l, s, inst); // s = T A w

        const double beta = beta_of.next();
        kernels::add_scaled(s, -beta, w, l); // l = s - beta w

        spmv(A, l, s, inst); // s = A l  (s reused)
        T.apply(s, q, inst); // q = T A l

        const double num = dot(w, s, inst); // (w, A l)
        const double den = dot(s, q, inst); // (A l, T A l)
        if (!std::isfinite(num) || !std::isfinite(den))
            throw NumericalError("psdi_1d: numerical failure (non-finite scalars)");
        if (!(den > 0.0)) {
            // (Al, TAl) = 0 with a nonzero residual cannot happen for
            // beta in (b, c); treat as numerical failure.
            if (report.trace.back() == 0.0) {
                detail::finalize(report, inst, std::move(x), Termination::converged);
                return report;
            }
            throw NumericalError("psdi_1d: direction annihilated");
        }
        const double alpha = num / den;

        kernels::axpy(alpha, l, x);
        if (track_true) kernels::axpy(-alpha, s, r);
        kernels::axpy(-alpha, q, w);

        rec.push(detail::residual_measure(cfg.residual_mode, r, w, inst));
        if (report.trace.back() <= target) {
            detail::finalize(report, inst, std::move(x), Termination::converged);
            return report;
        }
    }

    detail::finalize(report, inst, std::move(x), Termination::max_iter);
    return report;
}

} // namespace sid
