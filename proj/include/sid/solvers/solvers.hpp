/// @file solvers.hpp
/// @brief Iterative schemes for symmetric indefinite systems with an SPD
///        preconditioner T. All of them monitor and reduce the residual
///        T-norm ||r||_T = (r, T r)^{1/2}.
///
/// Per-iteration operation counts (matvecs, preconditioner applications,
/// algorithmic inner products), excluding the shared setup that forms the
/// initial preconditioned residual:
///
///                       MatVecs  Precs  Inner products
///     psdi                 2       2        4
///     psdi_1d              2       2        2
///     pminres (per step)   1       1        2   (+1 at setup)
///
/// psdi and psdi_1d hold five length-n work vectors; pminres holds eight.

#ifndef SID_SOLVERS_SOLVERS_HPP
#define SID_SOLVERS_SOLVERS_HPP

#include "sid/core/operator.hpp"
#include "sid/core/sparse_matrix.hpp"
#include "sid/solvers/config.hpp"
#include "sid/theory/interval.hpp"

namespace sid {

/// Scalars of one two-term minimization step, from the 2x2 least-squares
/// system in the T-inner product with columns A w and A s:
///   xi = (w, Aw), nu = (As, TAs), mu = (w, As), eta = (s, As).
/// The Gram determinant nu*mu - eta^2 is nonnegative in exact arithmetic;
/// its vanishing signals that w and s are collinear.
struct IterationScalars {
    double xi = 0.0;
    double nu = 0.0;
    double mu = 0.0;
    double eta = 0.0;

    double gram() const { return nu * mu - eta * eta; }

    /// Collinearity test with the roundoff guard: the determinant is compared
    /// against eps * nu * mu rather than zero, since roundoff produces tiny
    /// negatives for exactly collinear data.
    bool breakdown(double eps = 1e-12) const { return !(gram() > eps * nu * mu); }
};

/// Two-term scheme: each step minimizes ||r - beta*A*Tr - alpha*A*TATr||_T
/// over both coefficients. Equivalent to a minimum-residual Krylov method
/// restarted every two steps, at minimal cost. On collinearity of the two
/// directions the exact solution x + (xi/mu) w is returned with termination
/// exact_breakdown_solution.
SolveReport psdi(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                 const Vector& x0, const SolverConfig& cfg);

/// One-dimensional variant: needs the inner spectral endpoints b, c of the
/// preconditioned operator and steps along l = s - beta*w with the
/// T-norm-minimizing step length alpha = (w, Al)/(Al, TAl). beta is resolved
/// per iteration from cfg.beta; randomized strategies draw from a generator
/// seeded with cfg.rng_seed (normal draws are resampled until they land in
/// (b, c), capped at 100 attempts).
SolveReport psdi_1d(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                    const Vector& x0, const SolverConfig& cfg, const IntervalPair& interval);

/// Stationary two-term iteration x <- x + alpha*(s - beta*w) with constant
/// parameters. Converges when b < beta < c and 0 < alpha < tau_beta; runs
/// regardless, as a substrate for divergence studies. alpha = 0 is accepted
/// and leaves the iterate fixed.
SolveReport stationary_two_term(const SparseMatrix& A, const Preconditioner& T,
                                const Vector& f, const Vector& x0, double alpha, double beta,
                                int max_iter,
                                ResidualMode residual_mode = ResidualMode::true_tnorm);

/// Single-direction residual minimization x <- x + alpha*Tr. For indefinite
/// operators some error components are amplified for every step length, so
/// this is shipped as a divergence baseline with no convergence contract.
SolveReport orthomin1(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                      const Vector& x0, int max_iter, double tol = 1e-12);

/// Preconditioned MINRES (preconditioned Lanczos + plane rotations). The
/// residual T-norm trace comes from the rotation recurrence, is monotone,
/// and equals the minimum over the expanding preconditioned Krylov subspace.
SolveReport pminres(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                    const Vector& x0, const SolverConfig& cfg);

/// pminres restarted every k steps. Each restart pays the setup matvec,
/// preconditioner application and inner product again to rebuild the
/// preconditioned residual; the counters keep that cost visible. k = 2
/// reproduces the psdi iterates.
SolveReport pminres_restarted(const SparseMatrix& A, const Preconditioner& T, const Vector& f,
                              const Vector& x0, int k, const SolverConfig& cfg);

} // namespace sid

#endif // SID_SOLVERS_SOLVERS_HPP
