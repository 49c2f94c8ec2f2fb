/// @file sparse_matrix.hpp
/// @brief Symmetric sparse matrix in CSR form with both halves stored
///        explicitly, plus the instrumented sparse matrix-vector product.

#ifndef SID_CORE_SPARSE_MATRIX_HPP
#define SID_CORE_SPARSE_MATRIX_HPP

#include <span>
#include <vector>

#include "sid/core/types.hpp"

namespace sid {

struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/// Compressed-sparse-row matrix. Invariants, enforced at construction:
///   - row_ptr nondecreasing, column indices in [0, n) and sorted per row,
///   - structural and numerical symmetry to relative 1e-14.
/// Both halves are stored explicitly, so row traversal is the whole story for
/// the matvec and operation counts stay unambiguous.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Build from (row, col, value) triplets; duplicates are summed.
    /// Throws InvalidArgumentError on out-of-range indices or asymmetry.
    static SparseMatrix from_triplets(index_t n, std::vector<Triplet> triplets);

    static SparseMatrix identity(index_t n);
    static SparseMatrix diagonal(const Vector& d);

    index_t dim() const { return n_; }
    index_t nnz() const { return static_cast<index_t>(values_.size()); }

    const std::vector<index_t>& row_ptr() const { return row_ptr_; }
    const std::vector<index_t>& col_idx() const { return col_idx_; }
    const Vector& values() const { return values_; }

    /// Entry (i, j); zero when not stored. Binary search within the row.
    double coeff(index_t i, index_t j) const;

    /// y = A x without instrumentation; building block for the counted spmv
    /// and for contexts (oracles, I/O round-trips) outside any solve.
    void multiply(std::span<const double> x, std::span<double> y) const;

    /// Symmetry check used by the constructor; exposed for tests.
    /// Relative tolerance on paired values, absolute on near-zero pairs.
    bool is_symmetric(double rel_tol = 1e-14) const;

private:
    index_t n_ = 0;
    std::vector<index_t> row_ptr_;
    std::vector<index_t> col_idx_;
    Vector values_;
};

/// y = A x, counting exactly one matvec on the caller's instrumentation.
void spmv(const SparseMatrix& A, const Vector& x, Vector& y, Instrumentation& inst);
Vector spmv(const SparseMatrix& A, const Vector& x, Instrumentation& inst);

} // namespace sid

#endif // SID_CORE_SPARSE_MATRIX_HPP
