/// @file problems.hpp
/// @brief Deterministic generators for benchmark systems: the shifted
///        2-D Laplacian, a PDE-constrained-optimization saddle system, and
///        diagonal diagnostics.

#ifndef SID_PROBLEMS_PROBLEMS_HPP
#define SID_PROBLEMS_PROBLEMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sid/core/sparse_matrix.hpp"
#include "sid/precond/preconditioners.hpp"

namespace sid {

struct ProblemMetadata {
    std::string generator;
    int grid = 0;            ///< grid points (Laplacian) or elements (saddle) per side
    double sigma = 0.0;      ///< Laplacian shift
    double tau = 0.0;        ///< saddle regularization
    std::uint64_t seed = 0;
    std::string rhs = "random";
};

/// A ready-to-solve system: operator, SPD preconditioner, right-hand side and
/// initial guess (both reproducible from the seed), plus provenance.
struct ProblemInstance {
    SparseMatrix A;
    PreconditionerPtr T;
    Vector f;
    Vector x0;
    std::string label;
    ProblemMetadata meta;

    index_t dim() const { return A.dim(); }
};

/// 5-point finite-difference Laplacian on the unit square with homogeneous
/// Dirichlet boundary, m interior points per side, h = 1/(m+1), scaled by
/// 1/h^2. Eigenvalues are (4/h^2)(sin^2(j pi h/2) + sin^2(k pi h/2)).
SparseMatrix laplacian_2d(index_t m);

/// Analytic eigenvalues of laplacian_2d(m), ascending.
std::vector<double> laplacian_2d_eigenvalues(index_t m);

/// A = L - sigma*I with T = L^{-1}; f and x0 seeded uniform on (-1, 1).
/// For sigma above the lowest Laplacian eigenvalues the system is indefinite
/// while the preconditioner stays SPD.
ProblemInstance shifted_laplacian(index_t m, double sigma, std::uint64_t seed = 0);

/// Bilinear (Q1) stiffness and consistent mass matrices on a uniform m-by-m
/// element grid over the unit square, Dirichlet boundary eliminated
/// (interior block size (m-1)^2). Element integrals use 2x2 Gauss
/// quadrature, exact for these integrands.
void q1_stiffness_mass(index_t m, SparseMatrix& K, SparseMatrix& M);

enum class SaddleRhs {
    assembled_load, ///< target-state load vector in the middle block
    random          ///< seeded uniform(-1, 1) right-hand side
};

/// Distributed-control saddle system
///     A = [ 2 tau M    0   -M ]
///         [   0        M    K ]
///         [  -M        K    0 ]
/// of dimension 3 (m-1)^2, with the block-diagonal preconditioner
/// blockdiag((1/(2 tau)) M^{-1}, M^{-1}, K^{-1} M K^{-1}). The assembled
/// load integrates the target state (2x-1)^2 (2y-1)^2 on (0, 1/2)^2 (zero
/// elsewhere) against the middle-block basis; boundary data is zero.
ProblemInstance control_saddle_problem(index_t m, double tau, std::uint64_t seed = 0,
                                       SaddleRhs rhs = SaddleRhs::assembled_load);

/// A = diag(spectrum), T = I, seeded random f, x0 = 0. The preconditioned
/// spectrum is exact by construction; unit-test substrate. The spectrum must
/// contain both signs and no zeros.
ProblemInstance diagonal_model(const std::vector<double>& spectrum, std::uint64_t seed = 0);

/// x0 = x* + delta with delta uniform on [0, eps], where x* solves
/// A x* = f by a dense factorization. eps = 0 returns the exact solution.
Vector perturbed_solution_start(const ProblemInstance& P, double eps, std::uint64_t seed);

/// Seeded vector with entries uniform on (lo, hi); the building block every
/// generator uses for f and x0.
Vector random_vector(index_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

} // namespace sid

#endif // SID_PROBLEMS_PROBLEMS_HPP
