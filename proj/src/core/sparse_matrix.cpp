#include "sid/core/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "sid/core/kernels.hpp"

namespace sid {

SparseMatrix SparseMatrix::from_triplets(index_t n, std::vector<Triplet> triplets) {
    if (n < 0) throw InvalidArgumentError("SparseMatrix: negative dimension");
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
            throw InvalidArgumentError("SparseMatrix: triplet index out of range");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix A;
    A.n_ = n;
    A.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    A.col_idx_.reserve(triplets.size());
    A.values_.reserve(triplets.size());

    for (std::size_t k = 0; k < triplets.size();) {
        const index_t i = triplets[k].row;
        const index_t j = triplets[k].col;
        double v = triplets[k].value;
        ++k;
        while (k < triplets.size() && triplets[k].row == i && triplets[k].col == j) {
            v += triplets[k].value; // assembly-style duplicate summation
            ++k;
        }
        A.col_idx_.push_back(j);
        A.values_.push_back(v);
        ++A.row_ptr_[static_cast<std::size_t>(i) + 1];
    }
    for (index_t i = 0; i < n; ++i)
        A.row_ptr_[static_cast<std::size_t>(i) + 1] += A.row_ptr_[static_cast<std::size_t>(i)];

    if (!A.is_symmetric())
        throw InvalidArgumentError("SparseMatrix: matrix is not symmetric");
    return A;
}

SparseMatrix SparseMatrix::identity(index_t n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, std::move(t));
}

SparseMatrix SparseMatrix::diagonal(const Vector& d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (index_t i = 0; i < static_cast<index_t>(d.size()); ++i)
        t.push_back({i, i, d[static_cast<std::size_t>(i)]});
    return from_triplets(static_cast<index_t>(d.size()), std::move(t));
}

double SparseMatrix::coeff(index_t i, index_t j) const {
    const auto lo = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i)];
    const auto hi = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i) + 1];
    const auto it = std::lower_bound(lo, hi, j);
    if (it == hi || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    detail::require_dim(x.size(), static_cast<std::size_t>(n_), "SparseMatrix::multiply x");
    detail::require_dim(y.size(), static_cast<std::size_t>(n_), "SparseMatrix::multiply y");
    kernels::spmv(n_, row_ptr_.data(), col_idx_.data(), values_.data(), x.data(), y.data());
}

bool SparseMatrix::is_symmetric(double rel_tol) const {
    for (index_t i = 0; i < n_; ++i) {
        for (index_t k = row_ptr_[static_cast<std::size_t>(i)];
             k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = col_idx_[static_cast<std::size_t>(k)];
            if (j == i) continue;
            const double v  = values_[static_cast<std::size_t>(k)];
            const double vt = coeff(j, i);
            const double scale = std::max(std::abs(v), std::abs(vt));
            if (std::abs(v - vt) > rel_tol * std::max(scale, 1e-300)) return false;
        }
    }
    return true;
}

void spmv(const SparseMatrix& A, const Vector& x, Vector& y, Instrumentation& inst) {
    detail::require_dim(x.size(), static_cast<std::size_t>(A.dim()), "spmv x");
    if (y.size() != static_cast<std::size_t>(A.dim())) y.resize(static_cast<std::size_t>(A.dim()));
    A.multiply(x, y);
    inst.count_matvec();
}

Vector spmv(const SparseMatrix& A, const Vector& x, Instrumentation& inst) {
    Vector y(static_cast<std::size_t>(A.dim()));
    spmv(A, x, y, inst);
    return y;
}

} // namespace sid
