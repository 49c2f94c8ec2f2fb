/// @file cholesky.hpp
/// @brief Exact sparse Cholesky factorization in profile (envelope) storage,
///        natural ordering.

#ifndef SID_PRECOND_CHOLESKY_HPP
#define SID_PRECOND_CHOLESKY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sid/core/sparse_matrix.hpp"

namespace sid {

/// Lower-triangular factor R with B = R R^T for an SPD matrix B.
///
/// Natural ordering, profile storage: row i holds the contiguous range
/// [first_col(i), i], where first_col(i) is the leftmost stored column of B's
/// row i. Fill generated during elimination never escapes the profile, so the
/// factorization is exact. At the problem sizes targeted here (banded grid
/// operators, a few thousand unknowns) the profile stays small and the fill
/// pattern is reproducible run to run.
class SparseCholeskyFactor {
public:
    /// Factor B. Throws NotSpdError on a non-positive pivot.
    explicit SparseCholeskyFactor(const SparseMatrix& B);

    index_t dim() const { return n_; }

    /// Stored coefficients of R, fill included.
    std::int64_t profile_size() const { return static_cast<std::int64_t>(coeff_.size()); }

    /// x = B^{-1} b via forward and backward substitution.
    void solve(std::span<const double> b, std::span<double> x) const;
    Vector solve(const Vector& b) const;

    /// Entry R(i, j); zero outside the profile. For reconstruction tests.
    double factor_entry(index_t i, index_t j) const;

private:
    index_t n_ = 0;
    std::vector<index_t> first_col_;      // leftmost column of each profile row
    std::vector<std::int64_t> row_start_; // offset of each profile row in coeff_
    Vector coeff_;                        // R(i, first_col_[i] .. i), row by row

    double& at(index_t i, index_t j) {
        return coeff_[static_cast<std::size_t>(row_start_[static_cast<std::size_t>(i)] +
                                               (j - first_col_[static_cast<std::size_t>(i)]))];
    }
    double at(index_t i, index_t j) const {
        return coeff_[static_cast<std::size_t>(row_start_[static_cast<std::size_t>(i)] +
                                               (j - first_col_[static_cast<std::size_t>(i)]))];
    }
};

} // namespace sid

#endif // SID_PRECOND_CHOLESKY_HPP
