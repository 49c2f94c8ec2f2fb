/// @file kernels.hpp
/// @brief Dense/sparse level-1/level-2 kernels in two flavors: a serial
///        reference implementation and OpenMP-parallel versions.
///
/// The parallel reductions partition the index range into chunks of a fixed
/// size that depends only on the problem size, accumulate one partial sum per
/// chunk, and combine the partials sequentially. The result is therefore
/// bit-identical for any thread count, which keeps seeded experiment output
/// byte-reproducible.

#ifndef SID_CORE_KERNELS_HPP
#define SID_CORE_KERNELS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sid/core/types.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sid::kernels {

/// Below this size the dispatching wrappers stay serial; forking threads
/// costs more than the loop.
inline constexpr std::size_t parallel_threshold = 1u << 13;

inline constexpr std::size_t reduction_chunk = 1u << 12;

namespace serial {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void spmv(index_t n, const index_t* row_ptr, const index_t* col_idx,
                 const double* values, const double* x, double* y) {
    for (index_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            s += values[k] * x[col_idx[k]];
        y[i] = s;
    }
}

/// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

/// y += alpha * u + beta * v
inline void axpy2(double alpha, std::span<const double> u, double beta,
                  std::span<const double> v, std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * u[i] + beta * v[i];
}

/// out = u + alpha * v
inline void add_scaled(std::span<const double> u, double alpha,
                       std::span<const double> v, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i] + alpha * v[i];
}

inline double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

} // namespace serial

#ifdef _OPENMP
namespace parallel {

inline double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t nchunks = (n + reduction_chunk - 1) / reduction_chunk;
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * reduction_chunk;
        const std::size_t hi = std::min(lo + reduction_chunk, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
        partial[static_cast<std::size_t>(c)] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

inline void spmv(index_t n, const index_t* row_ptr, const index_t* col_idx,
                 const double* values, const double* x, double* y) {
#pragma omp parallel for schedule(static)
    for (index_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            s += values[k] * x[col_idx[k]];
        y[i] = s;
    }
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

inline void axpy2(double alpha, std::span<const double> u, double beta,
                  std::span<const double> v, std::span<double> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * u[i] + beta * v[i];
}

inline void add_scaled(std::span<const double> u, double alpha,
                       std::span<const double> v, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = u[i] + alpha * v[i];
}

inline double max_abs(std::span<const double> a) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

} // namespace parallel
#endif // _OPENMP

// ---------------------------------------------------------------------------
// Dispatching wrappers: parallel above the size threshold when compiled with
// OpenMP, serial reference otherwise.
// ---------------------------------------------------------------------------

inline double dot(std::span<const double> a, std::span<const double> b) {
#ifdef _OPENMP
    if (a.size() >= parallel_threshold) return parallel::dot(a, b);
#endif
    return serial::dot(a, b);
}

inline void spmv(index_t n, const index_t* row_ptr, const index_t* col_idx,
                 const double* values, const double* x, double* y) {
#ifdef _OPENMP
    if (static_cast<std::size_t>(n) >= parallel_threshold) {
        parallel::spmv(n, row_ptr, col_idx, values, x, y);
        return;
    }
#endif
    serial::spmv(n, row_ptr, col_idx, values, x, y);
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
#ifdef _OPENMP
    if (x.size() >= parallel_threshold) {
        parallel::axpy(alpha, x, y);
        return;
    }
#endif
    serial::axpy(alpha, x, y);
}

inline void axpy2(double alpha, std::span<const double> u, double beta,
                  std::span<const double> v, std::span<double> y) {
#ifdef _OPENMP
    if (y.size() >= parallel_threshold) {
        parallel::axpy2(alpha, u, beta, v, y);
        return;
    }
#endif
    serial::axpy2(alpha, u, beta, v, y);
}

inline void add_scaled(std::span<const double> u, double alpha,
                       std::span<const double> v, std::span<double> out) {
#ifdef _OPENMP
    if (out.size() >= parallel_threshold) {
        parallel::add_scaled(u, alpha, v, out);
        return;
    }
#endif
    serial::add_scaled(u, alpha, v, out);
}

inline double max_abs(std::span<const double> a) {
#ifdef _OPENMP
    if (a.size() >= parallel_threshold) return parallel::max_abs(a);
#endif
    return serial::max_abs(a);
}

} // namespace sid::kernels

#endif // SID_CORE_KERNELS_HPP
