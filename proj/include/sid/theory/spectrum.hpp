/// @file spectrum.hpp
/// @brief Dense spectrum oracle for the preconditioned operator T A and
///        interval construction from its spectrum.

#ifndef SID_THEORY_SPECTRUM_HPP
#define SID_THEORY_SPECTRUM_HPP

#include <vector>

#include "sid/core/operator.hpp"
#include "sid/core/sparse_matrix.hpp"
#include "sid/theory/interval.hpp"

namespace sid {

/// Full spectrum of T A, real because T A is similar to the symmetric matrix
/// R^T A R with T = R R^T.
struct SpectrumReport {
    std::vector<double> eigenvalues; ///< ascending
    index_t negative_count = 0;      ///< p

    index_t size() const { return static_cast<index_t>(eigenvalues.size()); }
    double lambda_min() const { return eigenvalues.front(); }
    double lambda_max() const { return eigenvalues.back(); }
    /// Largest negative eigenvalue (lambda_p). Requires p >= 1.
    double lambda_neg_max() const;
    /// Smallest positive eigenvalue (lambda_{p+1}). Requires p < n.
    double lambda_pos_min() const;
};

inline constexpr index_t default_oracle_cap = 4096;

/// Dense eigensolve of T A at desk scale:
///   1. densify T column by column (n applications to unit vectors),
///   2. factor the dense T = R R^T (fails if the densified operator is not
///      SPD),
///   3. form the symmetric R^T A R, similar to T A,
///   4. full symmetric eigensolve.
/// Throws OracleCapError for n > cap.
SpectrumReport spectrum_oracle(const SparseMatrix& A, const Preconditioner& T,
                               index_t cap = default_oracle_cap);

enum class IntervalPolicy { extend_outward };

/// Enclosing equal-length interval pair for an indefinite spectrum:
/// start from (lambda_1, lambda_p, lambda_{p+1}, lambda_n) and extend exactly
/// one outer endpoint outward until both intervals have the same length.
/// Never shrinks an interval below the spectrum. Throws
/// DefiniteSpectrumError when all eigenvalues share one sign.
IntervalPair interval_from_spectrum(const SpectrumReport& s,
                                    IntervalPolicy policy = IntervalPolicy::extend_outward);

} // namespace sid

#endif // SID_THEORY_SPECTRUM_HPP
