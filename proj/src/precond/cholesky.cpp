#include "sid/precond/cholesky.hpp"

#include <algorithm>
#include <cmath>

namespace sid {

SparseCholeskyFactor::SparseCholeskyFactor(const SparseMatrix& B) {
    n_ = B.dim();
    first_col_.resize(static_cast<std::size_t>(n_));
    row_start_.resize(static_cast<std::size_t>(n_));

    const auto& row_ptr = B.row_ptr();
    const auto& col_idx = B.col_idx();
    const auto& values = B.values();

    std::int64_t total = 0;
    for (index_t i = 0; i < n_; ++i) {
        index_t fc = i; // diagonal-only profile when the row has no lower entries
        for (index_t k = row_ptr[static_cast<std::size_t>(i)];
             k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = col_idx[static_cast<std::size_t>(k)];
            if (j <= i) {
                fc = std::min(fc, j);
                break; // columns are sorted; the first entry <= i is the leftmost
            }
        }
        first_col_[static_cast<std::size_t>(i)] = fc;
        row_start_[static_cast<std::size_t>(i)] = total;
        total += i - fc + 1;
    }
    coeff_.assign(static_cast<std::size_t>(total), 0.0);

    // Scatter the lower triangle of B into the profile.
    for (index_t i = 0; i < n_; ++i) {
        for (index_t k = row_ptr[static_cast<std::size_t>(i)];
             k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = col_idx[static_cast<std::size_t>(k)];
            if (j <= i) at(i, j) = values[static_cast<std::size_t>(k)];
        }
    }

    // Row-oriented factorization. The inner sums run over the overlap of the
    // profiles of rows i and j, which is exactly where nonzeros can live.
    for (index_t i = 0; i < n_; ++i) {
        const index_t fi = first_col_[static_cast<std::size_t>(i)];
        for (index_t j = fi; j < i; ++j) {
            const index_t fj = first_col_[static_cast<std::size_t>(j)];
            const index_t lo = std::max(fi, fj);
            double s = at(i, j);
            for (index_t k = lo; k < j; ++k) s -= at(i, k) * at(j, k);
            at(i, j) = s / at(j, j);
        }
        double diag = at(i, i);
        for (index_t k = fi; k < i; ++k) diag -= at(i, k) * at(i, k);
        if (!(diag > 0.0) || !std::isfinite(diag))
            throw NotSpdError("matrix not SPD: non-positive pivot at row " + std::to_string(i));
        at(i, i) = std::sqrt(diag);
    }
}

void SparseCholeskyFactor::solve(std::span<const double> b, std::span<double> x) const {
    detail::require_dim(b.size(), static_cast<std::size_t>(n_), "cholesky solve b");
    detail::require_dim(x.size(), static_cast<std::size_t>(n_), "cholesky solve x");

    // Forward: R z = b
    for (index_t i = 0; i < n_; ++i) {
        const index_t fi = first_col_[static_cast<std::size_t>(i)];
        double s = b[static_cast<std::size_t>(i)];
        for (index_t k = fi; k < i; ++k) s -= at(i, k) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / at(i, i);
    }
    // Backward: R^T x = z, column-oriented over the profile rows.
    for (index_t j = n_ - 1; j >= 0; --j) {
        const index_t fj = first_col_[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(j)] /= at(j, j);
        const double xj = x[static_cast<std::size_t>(j)];
        for (index_t k = fj; k < j; ++k) x[static_cast<std::size_t>(k)] -= at(j, k) * xj;
    }
}

Vector SparseCholeskyFactor::solve(const Vector& b) const {
    Vector x(b.size());
    solve(std::span<const double>(b), std::span<double>(x));
    return x;
}

double SparseCholeskyFactor::factor_entry(index_t i, index_t j) const {
    if (i < 0 || i >= n_ || j < 0 || j > i) return 0.0;
    if (j < first_col_[static_cast<std::size_t>(i)]) return 0.0;
    return at(i, j);
}

} // namespace sid
