/// @file factors.hpp
/// @brief Exact evaluators for the convergence factors of two-term
///        residual-minimizing iterations on symmetric indefinite systems.
///
/// Everything here is endpoint arithmetic: over [a,b] U [c,d] the parabola
/// mu_beta(lambda) = lambda^2 - beta*lambda attains its extrema at interval
/// endpoints, so no optimization loops are ever needed.

#ifndef SID_THEORY_FACTORS_HPP
#define SID_THEORY_FACTORS_HPP

#include "sid/theory/interval.hpp"

namespace sid {

/// mu_beta(lambda) = lambda^2 - beta*lambda, the parabola with zeros at 0 and
/// beta that maps the indefinite spectrum to one sign when b < beta < c.
double mu_beta(double lambda, double beta);

/// max of mu_beta over the interval pair (attained at a or d).
double mu_max(const IntervalPair& I, double beta);
/// min of mu_beta over the interval pair (attained at b or c).
double mu_min(const IntervalPair& I, double beta);

/// Upper limit for the step size of the stationary two-term iteration:
/// tau_beta = 2 / mu_max. Requires b < beta < c.
double tau_beta(const IntervalPair& I, double beta);

/// Stepwise factor of the stationary iteration with given alpha, beta:
/// max over {a,b,c,d} of |1 - alpha*(lambda^2 - beta*lambda)|. Returns the
/// factor even when it is >= 1, for divergence studies.
double rho_stationary(const IntervalPair& I, double alpha, double beta);

/// Step size minimizing rho_stationary for a fixed beta in (b, c):
/// 2 / (mu_min + mu_max).
double alpha_opt_of_beta(const IntervalPair& I, double beta);

/// Effective condition number mu_max / mu_min for beta in (b, c); equals
/// ad/bc at beta = c - |b|.
double kappa_tilde(const IntervalPair& I, double beta);

/// Best stepwise factor attainable with a fixed beta in (b, c):
/// (kappa_tilde - 1) / (kappa_tilde + 1).
double rho_opt_of_beta(const IntervalPair& I, double beta);

/// Optimal stepwise factor over all admissible parameters:
/// (|ad| - |bc|) / (|ad| + |bc|).
double rho_opt(const IntervalPair& I);
/// The minimizing beta: c - |b|.
double beta_opt(const IntervalPair& I);
/// The minimizing alpha: 2 / (|b| c + |a| d).
double alpha_opt(const IntervalPair& I);

/// Residual bound multiplier for minimum-residual Krylov iterations after
/// `step` steps: 2 * ((sqrt|ad| - sqrt|bc|) / (sqrt|ad| + sqrt|bc|))^floor(step/2).
double pminres_bound(const IntervalPair& I, int step);

} // namespace sid

#endif // SID_THEORY_FACTORS_HPP
