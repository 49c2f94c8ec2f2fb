#include "sid/theory/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <cblas.h>
#include <lapacke.h>

namespace sid {

double SpectrumReport::lambda_neg_max() const {
    if (negative_count < 1) throw DefiniteSpectrumError("spectrum has no negative eigenvalues");
    return eigenvalues[static_cast<std::size_t>(negative_count) - 1];
}

double SpectrumReport::lambda_pos_min() const {
    if (negative_count >= size())
        throw DefiniteSpectrumError("spectrum has no positive eigenvalues");
    return eigenvalues[static_cast<std::size_t>(negative_count)];
}

SpectrumReport spectrum_oracle(const SparseMatrix& A, const Preconditioner& T, index_t cap) {
    const index_t n = A.dim();
    if (T.dim() != n) throw DimensionError("spectrum_oracle: dimension mismatch");
    if (n > cap)
        throw OracleCapError("spectrum_oracle: n = " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
    const auto N = static_cast<std::size_t>(n);

    // Densify T column by column. Column-major with lda = n throughout.
    Instrumentation scratch;
    std::vector<double> t_dense(N * N);
    {
        Vector e(N, 0.0), col(N);
        for (index_t j = 0; j < n; ++j) {
            e[static_cast<std::size_t>(j)] = 1.0;
            T.apply(std::span<const double>(e), std::span<double>(col), scratch);
            std::copy(col.begin(), col.end(), t_dense.begin() + static_cast<std::size_t>(j) * N);
            e[static_cast<std::size_t>(j)] = 0.0;
        }
    }

    // T = R R^T (lower Cholesky, in place).
    if (LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, t_dense.data(), n) != 0)
        throw NotSpdError("spectrum_oracle: densified preconditioner is not SPD");
    // dpotrf leaves the strict upper triangle untouched; clear it so the
    // sparse-times-dense product below sees R exactly.
    for (std::size_t j = 1; j < N; ++j)
        for (std::size_t i = 0; i < j; ++i) t_dense[i + j * N] = 0.0;

    // B = A R (sparse times dense, column by column), then M = R^T B.
    std::vector<double> b(N * N);
    for (std::size_t j = 0; j < N; ++j)
        A.multiply(std::span<const double>(t_dense.data() + j * N, N),
                   std::span<double>(b.data() + j * N, N));
    cblas_dtrmm(CblasColMajor, CblasLeft, CblasLower, CblasTrans, CblasNonUnit, n, n, 1.0,
                t_dense.data(), n, b.data(), n);

    // Symmetrize to scrub roundoff before the symmetric eigensolver.
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const double avg = 0.5 * (b[i + j * N] + b[j + i * N]);
            b[i + j * N] = avg;
            b[j + i * N] = avg;
        }

    SpectrumReport report;
    report.eigenvalues.resize(N);
    if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, b.data(), n,
                       report.eigenvalues.data()) != 0)
        throw NumericalError("spectrum_oracle: symmetric eigensolver failed");

    report.negative_count = static_cast<index_t>(
        std::count_if(report.eigenvalues.begin(), report.eigenvalues.end(),
                      [](double v) { return v < 0.0; }));
    return report;
}

IntervalPair interval_from_spectrum(const SpectrumReport& s, IntervalPolicy) {
    const index_t p = s.negative_count;
    if (p < 1 || p >= s.size())
        throw DefiniteSpectrumError("interval_from_spectrum: spectrum not indefinite");

    double a = s.lambda_min();
    double b = s.lambda_neg_max();
    double c = s.lambda_pos_min();
    double d = s.lambda_max();

    const double neg_len = std::abs(a) - std::abs(b);
    const double pos_len = d - c;
    if (neg_len > pos_len)
        d = c + neg_len;
    else
        a = b - pos_len;
    return IntervalPair(a, b, c, d);
}

} // namespace sid
