#include "sid/theory/factors.hpp"

#include <algorithm>
#include <cmath>

namespace sid {

namespace {
void require_beta_inside(const IntervalPair& I, double beta) {
    if (!(I.b < beta && beta < I.c))
        throw InvalidArgumentError("beta must lie strictly inside (b, c)");
}
} // namespace

double mu_beta(double lambda, double beta) { return lambda * lambda - beta * lambda; }

double mu_max(const IntervalPair& I, double beta) {
    return std::max(mu_beta(I.a, beta), mu_beta(I.d, beta));
}

double mu_min(const IntervalPair& I, double beta) {
    return std::min(mu_beta(I.b, beta), mu_beta(I.c, beta));
}

double tau_beta(const IntervalPair& I, double beta) {
    require_beta_inside(I, beta);
    return 2.0 / mu_max(I, beta);
}

double rho_stationary(const IntervalPair& I, double alpha, double beta) {
    double rho = 0.0;
    for (double lambda : {I.a, I.b, I.c, I.d})
        rho = std::max(rho, std::abs(1.0 - alpha * mu_beta(lambda, beta)));
    return rho;
}

double alpha_opt_of_beta(const IntervalPair& I, double beta) {
    require_beta_inside(I, beta);
    return 2.0 / (mu_min(I, beta) + mu_max(I, beta));
}

double kappa_tilde(const IntervalPair& I, double beta) {
    require_beta_inside(I, beta);
    return mu_max(I, beta) / mu_min(I, beta);
}

double rho_opt_of_beta(const IntervalPair& I, double beta) {
    const double kappa = kappa_tilde(I, beta);
    return (kappa - 1.0) / (kappa + 1.0);
}

double rho_opt(const IntervalPair& I) {
    const double ad = std::abs(I.a * I.d);
    const double bc = std::abs(I.b * I.c);
    return (ad - bc) / (ad + bc);
}

double beta_opt(const IntervalPair& I) { return I.c - std::abs(I.b); }

double alpha_opt(const IntervalPair& I) {
    return 2.0 / (std::abs(I.b) * I.c + std::abs(I.a) * I.d);
}

double pminres_bound(const IntervalPair& I, int step) {
    if (step < 0) throw InvalidArgumentError("pminres_bound: negative step");
    const double sad = std::sqrt(std::abs(I.a * I.d));
    const double sbc = std::sqrt(std::abs(I.b * I.c));
    const double factor = (sad - sbc) / (sad + sbc);
    return 2.0 * std::pow(factor, step / 2);
}

} // namespace sid
