#include "sid/problems/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <lapacke.h>

#include "sid/solvers/rng.hpp"

namespace sid {

namespace {

// Stream tags separating the generator's random vectors under one user seed.
constexpr std::uint64_t stream_rhs = 0x72687321;
constexpr std::uint64_t stream_x0 = 0x78302121;

} // namespace

Vector random_vector(index_t n, std::uint64_t seed, double lo, double hi) {
    Rng rng(seed);
    Vector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

SparseMatrix laplacian_2d(index_t m) {
    if (m < 2) throw InvalidArgumentError("laplacian_2d: need m >= 2");
    const double h = 1.0 / static_cast<double>(m + 1);
    const double inv_h2 = 1.0 / (h * h);
    const index_t n = m * m;

    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(5) * static_cast<std::size_t>(n));
    auto idx = [m](index_t i, index_t j) { return j * m + i; };
    for (index_t j = 0; j < m; ++j) {
        for (index_t i = 0; i < m; ++i) {
            const index_t row = idx(i, j);
            t.push_back({row, row, 4.0 * inv_h2});
            if (i > 0) t.push_back({row, idx(i - 1, j), -inv_h2});
            if (i < m - 1) t.push_back({row, idx(i + 1, j), -inv_h2});
            if (j > 0) t.push_back({row, idx(i, j - 1), -inv_h2});
            if (j < m - 1) t.push_back({row, idx(i, j + 1), -inv_h2});
        }
    }
    return SparseMatrix::from_triplets(n, std::move(t));
}

std::vector<double> laplacian_2d_eigenvalues(index_t m) {
    const double h = 1.0 / static_cast<double>(m + 1);
    const double scale = 4.0 / (h * h);
    std::vector<double> eigs;
    eigs.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (index_t j = 1; j <= m; ++j) {
        const double sj = std::sin(0.5 * std::numbers::pi * j * h);
        for (index_t k = 1; k <= m; ++k) {
            const double sk = std::sin(0.5 * std::numbers::pi * k * h);
            eigs.push_back(scale * (sj * sj + sk * sk));
        }
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

ProblemInstance shifted_laplacian(index_t m, double sigma, std::uint64_t seed) {
    if (m < 2) throw InvalidArgumentError("shifted_laplacian: need m >= 2");
    if (!(sigma >= 0.0)) throw InvalidArgumentError("shifted_laplacian: sigma must be >= 0");

    SparseMatrix L = laplacian_2d(m);
    const index_t n = L.dim();

    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(L.nnz()));
    const auto& row_ptr = L.row_ptr();
    const auto& col_idx = L.col_idx();
    const auto& values = L.values();
    for (index_t i = 0; i < n; ++i)
        for (index_t k = row_ptr[static_cast<std::size_t>(i)];
             k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            const index_t j = col_idx[static_cast<std::size_t>(k)];
            double v = values[static_cast<std::size_t>(k)];
            if (i == j) v -= sigma;
            t.push_back({i, j, v});
        }

    ProblemInstance p;
    p.A = SparseMatrix::from_triplets(n, std::move(t));
    p.T = inverse_spd_preconditioner(L);
    p.f = random_vector(n, derive_seed(seed, stream_rhs));
    p.x0 = random_vector(n, derive_seed(seed, stream_x0));
    p.label = "laplacian(m=" + std::to_string(m) + ",sigma=" + std::to_string(sigma) + ")";
    p.meta = {"shifted_laplacian", m, sigma, 0.0, seed, "random"};
    return p;
}

namespace {

struct Q1Element {
    std::array<std::array<double, 4>, 4> stiffness{};
    std::array<std::array<double, 4>, 4> mass{};
};

/// Element matrices on an h-by-h square by 2x2 Gauss quadrature. Local node
/// order: (0,0), (1,0), (1,1), (0,1) on the reference square.
Q1Element q1_element(double h) {
    Q1Element e;
    const double g0 = 0.5 - 0.5 / std::sqrt(3.0);
    const double g1 = 0.5 + 0.5 / std::sqrt(3.0);
    const std::array<double, 2> pts{g0, g1};

    for (double gx : pts) {
        for (double gy : pts) {
            const std::array<double, 4> shape{(1 - gx) * (1 - gy), gx * (1 - gy), gx * gy,
                                              (1 - gx) * gy};
            const std::array<double, 4> dx{-(1 - gy), (1 - gy), gy, -gy};
            const std::array<double, 4> dy{-(1 - gx), -gx, gx, (1 - gx)};
            const double wq = 0.25; // (1/2)^2 Gauss weights on the unit square
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    // gradients scale by 1/h, area by h^2
                    e.stiffness[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        wq * (dx[static_cast<std::size_t>(i)] * dx[static_cast<std::size_t>(j)] +
                              dy[static_cast<std::size_t>(i)] * dy[static_cast<std::size_t>(j)]);
                    e.mass[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        wq * h * h * shape[static_cast<std::size_t>(i)] *
                        shape[static_cast<std::size_t>(j)];
                }
        }
    }
    return e;
}

double target_state(double x, double y) {
    if (x >= 0.5 || y >= 0.5) return 0.0;
    const double px = (2.0 * x - 1.0) * (2.0 * x - 1.0);
    const double py = (2.0 * y - 1.0) * (2.0 * y - 1.0);
    return px * py;
}

} // namespace

void q1_stiffness_mass(index_t m, SparseMatrix& K, SparseMatrix& M) {
    if (m < 2) throw InvalidArgumentError("q1_stiffness_mass: need m >= 2");
    const double h = 1.0 / static_cast<double>(m);
    const index_t nin = (m - 1) * (m - 1);
    const Q1Element el = q1_element(h);

    // interior node index; -1 on the Dirichlet boundary
    auto node = [m](index_t i, index_t j) -> index_t {
        if (i < 1 || i > m - 1 || j < 1 || j > m - 1) return -1;
        return (j - 1) * (m - 1) + (i - 1);
    };

    std::vector<Triplet> kt, mt;
    kt.reserve(static_cast<std::size_t>(16) * static_cast<std::size_t>(m) * m);
    mt.reserve(kt.capacity());
    for (index_t ey = 0; ey < m; ++ey) {
        for (index_t ex = 0; ex < m; ++ex) {
            const std::array<index_t, 4> corners{node(ex, ey), node(ex + 1, ey),
                                                 node(ex + 1, ey + 1), node(ex, ey + 1)};
            for (int a = 0; a < 4; ++a) {
                if (corners[static_cast<std::size_t>(a)] < 0) continue;
                for (int b = 0; b < 4; ++b) {
                    if (corners[static_cast<std::size_t>(b)] < 0) continue;
                    kt.push_back({corners[static_cast<std::size_t>(a)],
                                  corners[static_cast<std::size_t>(b)],
                                  el.stiffness[static_cast<std::size_t>(a)]
                                              [static_cast<std::size_t>(b)]});
                    mt.push_back({corners[static_cast<std::size_t>(a)],
                                  corners[static_cast<std::size_t>(b)],
                                  el.mass[static_cast<std::size_t>(a)]
                                         [static_cast<std::size_t>(b)]});
                }
            }
        }
    }
    K = SparseMatrix::from_triplets(nin, std::move(kt));
    M = SparseMatrix::from_triplets(nin, std::move(mt));
}

ProblemInstance control_saddle_problem(index_t m, double tau, std::uint64_t seed,
                                       SaddleRhs rhs) {
    if (m < 2) throw InvalidArgumentError("control_saddle_problem: need m >= 2");
    if (!(tau > 0.0)) throw InvalidArgumentError("control_saddle_problem: tau must be positive");

    SparseMatrix K, M;
    q1_stiffness_mass(m, K, M);
    const index_t nb = K.dim();
    const index_t n = 3 * nb;

    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(2 * M.nnz() + M.nnz() + 2 * K.nnz()));
    auto emit = [&t](const SparseMatrix& B, index_t row_off, index_t col_off, double scale) {
        const auto& row_ptr = B.row_ptr();
        const auto& col_idx = B.col_idx();
        const auto& values = B.values();
        for (index_t i = 0; i < B.dim(); ++i)
            for (index_t k = row_ptr[static_cast<std::size_t>(i)];
                 k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
                t.push_back({row_off + i, col_off + col_idx[static_cast<std::size_t>(k)],
                             scale * values[static_cast<std::size_t>(k)]});
    };
    emit(M, 0, 0, 2.0 * tau);  // (1,1) block
    emit(M, 0, 2 * nb, -1.0);  // (1,3)
    emit(M, nb, nb, 1.0);      // (2,2)
    emit(K, nb, 2 * nb, 1.0);  // (2,3)
    emit(M, 2 * nb, 0, -1.0);  // (3,1)
    emit(K, 2 * nb, nb, 1.0);  // (3,2)

    ProblemInstance p;
    p.A = SparseMatrix::from_triplets(n, std::move(t));
    p.T = saddle_block_preconditioner(K, M, tau);

    if (rhs == SaddleRhs::random) {
        p.f = random_vector(n, derive_seed(seed, stream_rhs));
    } else {
        // Middle-block load: integrate the target state against the Q1 basis
        // with the same 2x2 quadrature. Zero elsewhere (boundary data is 0).
        p.f.assign(static_cast<std::size_t>(n), 0.0);
        const double h = 1.0 / static_cast<double>(m);
        const double g0 = 0.5 - 0.5 / std::sqrt(3.0);
        const double g1 = 0.5 + 0.5 / std::sqrt(3.0);
        auto node = [m](index_t i, index_t j) -> index_t {
            if (i < 1 || i > m - 1 || j < 1 || j > m - 1) return -1;
            return (j - 1) * (m - 1) + (i - 1);
        };
        for (index_t ey = 0; ey < m; ++ey) {
            for (index_t ex = 0; ex < m; ++ex) {
                const std::array<index_t, 4> corners{node(ex, ey), node(ex + 1, ey),
                                                     node(ex + 1, ey + 1), node(ex, ey + 1)};
                for (double gx : {g0, g1}) {
                    for (double gy : {g0, g1}) {
                        const double x = (ex + gx) * h;
                        const double y = (ey + gy) * h;
                        const double u = target_state(x, y);
                        if (u == 0.0) continue;
                        const std::array<double, 4> shape{(1 - gx) * (1 - gy), gx * (1 - gy),
                                                          gx * gy, (1 - gx) * gy};
                        for (int a = 0; a < 4; ++a) {
                            const index_t g = corners[static_cast<std::size_t>(a)];
                            if (g < 0) continue;
                            p.f[static_cast<std::size_t>(nb + g)] +=
                                0.25 * h * h * u * shape[static_cast<std::size_t>(a)];
                        }
                    }
                }
            }
        }
    }
    p.x0 = random_vector(n, derive_seed(seed, stream_x0));
    p.label = "saddle(m=" + std::to_string(m) + ",tau=" + std::to_string(tau) + ")";
    p.meta = {"control_saddle_problem", m, 0.0, tau, seed,
              rhs == SaddleRhs::random ? "random" : "assembled_load"};
    return p;
}

ProblemInstance diagonal_model(const std::vector<double>& spectrum, std::uint64_t seed) {
    bool has_pos = false, has_neg = false;
    for (double v : spectrum) {
        if (v == 0.0) throw InvalidArgumentError("diagonal_model: spectrum contains zero");
        has_pos |= v > 0.0;
        has_neg |= v < 0.0;
    }
    if (!has_pos || !has_neg)
        throw InvalidArgumentError("diagonal_model: spectrum must contain both signs");

    const index_t n = static_cast<index_t>(spectrum.size());
    ProblemInstance p;
    p.A = SparseMatrix::diagonal(spectrum);
    p.T = identity_preconditioner(n);
    p.f = random_vector(n, derive_seed(seed, stream_rhs));
    p.x0.assign(static_cast<std::size_t>(n), 0.0);
    p.label = "diag(n=" + std::to_string(n) + ")";
    p.meta = {"diagonal_model", 0, 0.0, 0.0, seed, "random"};
    return p;
}

Vector perturbed_solution_start(const ProblemInstance& P, double eps, std::uint64_t seed) {
    if (eps < 0.0) throw InvalidArgumentError("perturbed_solution_start: eps must be >= 0");
    const index_t n = P.dim();
    const auto N = static_cast<std::size_t>(n);

    // Dense LU solve for the exact solution; fine at desk scale.
    std::vector<double> dense(N * N, 0.0);
    const auto& row_ptr = P.A.row_ptr();
    const auto& col_idx = P.A.col_idx();
    const auto& values = P.A.values();
    for (index_t i = 0; i < n; ++i)
        for (index_t k = row_ptr[static_cast<std::size_t>(i)];
             k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
            dense[static_cast<std::size_t>(i) +
                  static_cast<std::size_t>(col_idx[static_cast<std::size_t>(k)]) * N] =
                values[static_cast<std::size_t>(k)];

    Vector x = P.f;
    std::vector<lapack_int> piv(N);
    if (LAPACKE_dgesv(LAPACK_COL_MAJOR, n, 1, dense.data(), n, piv.data(), x.data(), n) != 0)
        throw NumericalError("perturbed_solution_start: dense factorization failed");

    Rng rng(seed);
    for (auto& xi : x) xi += rng.uniform(0.0, eps);
    return x;
}

} // namespace sid
