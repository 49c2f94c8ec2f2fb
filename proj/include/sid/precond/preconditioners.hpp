/// @file preconditioners.hpp
/// @brief Concrete SPD preconditioners: identity, factorization-backed
///        inverse, SPD-matrix multiply, and the block-diagonal operator for
///        saddle-point systems from PDE-constrained optimization.

#ifndef SID_PRECOND_PRECONDITIONERS_HPP
#define SID_PRECOND_PRECONDITIONERS_HPP

#include <memory>

#include "sid/core/operator.hpp"
#include "sid/core/sparse_matrix.hpp"
#include "sid/precond/cholesky.hpp"

namespace sid {

using PreconditionerPtr = std::shared_ptr<const Preconditioner>;

/// T = I.
PreconditionerPtr identity_preconditioner(index_t n);

/// T = B^{-1} for SPD B, applied through the exact sparse Cholesky factor.
/// Throws NotSpdError when the factorization fails.
PreconditionerPtr inverse_spd_preconditioner(const SparseMatrix& B);

/// T = B for SPD B: apply multiplies by B. Useful when the preconditioner is
/// given directly as a (possibly dense-in-CSR) SPD matrix.
PreconditionerPtr spd_matrix_preconditioner(SparseMatrix B);

/// Block-diagonal operator for the 3m-dimensional saddle system built from
/// SPD stiffness K and mass M:
///
///     blockdiag( (1/(2 tau)) M^{-1},  M^{-1},  K^{-1} M K^{-1} )
///
/// with exact Cholesky solves for M^{-1} and K^{-1}. K is symmetric, so the
/// adjoint in the third block coincides with K^{-1} itself.
PreconditionerPtr saddle_block_preconditioner(const SparseMatrix& K, const SparseMatrix& M,
                                              double tau);

} // namespace sid

#endif // SID_PRECOND_PRECONDITIONERS_HPP
