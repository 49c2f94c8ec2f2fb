#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sid/core/matrix_market.hpp"
#include "sid/core/t_inner.hpp"
#include "sid/precond/preconditioners.hpp"
#include "sid/problems/problems.hpp"
#include "sid/solvers/rng.hpp"

#include "oracle_helpers.hpp"

using namespace sid;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("spmv: identity and diagonal") {
    Instrumentation inst;
    const SparseMatrix I3 = SparseMatrix::identity(3);
    const Vector x{1.0, 2.0, 3.0};
    const Vector y = spmv(I3, x, inst);
    CHECK(y == Vector{1.0, 2.0, 3.0});

    const SparseMatrix D = SparseMatrix::diagonal({1.0, -1.0});
    const Vector z = spmv(D, Vector{1.0, 1.0}, inst);
    CHECK(z == Vector{1.0, -1.0});

    CHECK(inst.counters.matvecs == 2);
    CHECK(inst.counters.inner_products == 0);
}

TEST_CASE("spmv: 5-point stencil rows against dense assembly") {
    const SparseMatrix L = laplacian_2d(3);
    const oracle::Dense Ld = oracle::dense_from_csr(L);
    const Vector ones(9, 1.0);

    Instrumentation inst;
    const Vector y = spmv(L, ones, inst);
    const Vector y_oracle = oracle::matvec(Ld, ones);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == doctest::Approx(y_oracle[i]));

    // hand value: h = 1/4, center row has no boundary neighbors -> row sum 0,
    // corner rows keep 4/h^2 - 2/h^2 = 32
    CHECK(y[4] == doctest::Approx(0.0));
    CHECK(y[0] == doctest::Approx(32.0));
}

TEST_CASE("spmv: dimension mismatch throws") {
    const SparseMatrix I3 = SparseMatrix::identity(3);
    Instrumentation inst;
    CHECK_THROWS_AS(spmv(I3, Vector{1.0, 2.0}, inst), DimensionError);
}

TEST_CASE("spmv linearity and symmetry on random instances") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const SparseMatrix A = oracle::random_symmetric(12, 100 + trial);
        const Vector x = random_vector(12, 7 + trial);
        const Vector y = random_vector(12, 77 + trial);
        const double al = rng.uniform(-2.0, 2.0);
        const double be = rng.uniform(-2.0, 2.0);

        Instrumentation inst;
        Vector xy(12);
        for (std::size_t i = 0; i < 12; ++i) xy[i] = al * x[i] + be * y[i];
        const Vector lhs = spmv(A, xy, inst);
        const Vector ax = spmv(A, x, inst);
        const Vector ay = spmv(A, y, inst);
        for (std::size_t i = 0; i < 12; ++i)
            CHECK(lhs[i] == doctest::Approx(al * ax[i] + be * ay[i]).epsilon(1e-12));

        // (Ax, y) == (x, Ay)
        CHECK(oracle::vdot(ax, y) == doctest::Approx(oracle::vdot(x, ay)).epsilon(1e-12));
    }
}

TEST_CASE("SparseMatrix rejects asymmetry and bad indices") {
    CHECK_THROWS_AS(SparseMatrix::from_triplets(2, {{0, 1, 1.0}}), InvalidArgumentError);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 2.0}}),
                    InvalidArgumentError);
    CHECK_THROWS_AS(SparseMatrix::from_triplets(2, {{0, 2, 1.0}}), InvalidArgumentError);
    // duplicates sum before the symmetry check
    const SparseMatrix A =
        SparseMatrix::from_triplets(2, {{0, 1, 0.5}, {0, 1, 0.5}, {1, 0, 1.0}});
    CHECK(A.coeff(0, 1) == 1.0);
}

TEST_CASE("t_inner: identity and diagonal cases") {
    Instrumentation inst;
    const auto I = identity_preconditioner(2);
    const Vector u{3.0, 4.0};
    CHECK(t_inner(u, u, *I, inst) == doctest::Approx(25.0));
    CHECK(inst.counters.precs == 1);
    CHECK(inst.counters.inner_products == 1);

    const auto T2 = spd_matrix_preconditioner(SparseMatrix::diagonal({2.0, 2.0}));
    const Vector v{1.0, 1.0};
    CHECK(t_inner(v, v, *T2, inst) == doctest::Approx(4.0));
}

TEST_CASE("t_inner with cached Tv costs one inner product only") {
    Instrumentation inst;
    const auto T = spd_matrix_preconditioner(SparseMatrix::diagonal({2.0, 3.0}));
    const Vector u{1.0, 2.0};
    const Vector tv = T->apply(u, inst);
    const auto before = inst.counters;
    const double val = t_inner_cached(u, tv, inst);
    CHECK(val == doctest::Approx(2.0 + 12.0));
    CHECK(inst.counters.precs == before.precs);
    CHECK(inst.counters.inner_products == before.inner_products + 1);
}

TEST_CASE("t_inner: inverse-Laplacian weight matches dense inverse") {
    const SparseMatrix L = laplacian_2d(5); // 5x5 interior grid
    const auto T = inverse_spd_preconditioner(L);
    const oracle::Dense Linv = oracle::inverse(oracle::dense_from_csr(L));

    const Vector u = random_vector(25, 3);
    const Vector v = random_vector(25, 4);
    Instrumentation inst;
    const double lib = t_inner(u, v, *T, inst);
    const double ref = oracle::vdot(u, oracle::matvec(Linv, v));
    CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("T-norm positivity under shipped SPD preconditioners") {
    const SparseMatrix L = laplacian_2d(4);
    const std::vector<PreconditionerPtr> ts{identity_preconditioner(16),
                                            inverse_spd_preconditioner(L),
                                            spd_matrix_preconditioner(L)};
    for (const auto& T : ts) {
        for (int trial = 0; trial < 20; ++trial) {
            const Vector u = random_vector(16, 1000 + trial);
            Instrumentation inst;
            CHECK(t_norm(u, *T, inst) > 0.0);
        }
    }
}

TEST_CASE("matrix market: write/read round trip is exact") {
    const auto path = temp_file("psdi_mm_roundtrip.mtx");
    const SparseMatrix D = SparseMatrix::diagonal({1.0, -1.0});
    write_matrix_market(D, path.string());
    const SparseMatrix R = read_matrix_market(path.string());
    CHECK(R.dim() == 2);
    CHECK(R.row_ptr() == D.row_ptr());
    CHECK(R.col_idx() == D.col_idx());
    CHECK(R.values() == D.values()); // bit-exact via 17 significant digits

    // something less trivial
    const SparseMatrix L = laplacian_2d(4);
    write_matrix_market(L, path.string());
    const SparseMatrix L2 = read_matrix_market(path.string());
    CHECK(L2.values() == L.values());
    std::filesystem::remove(path);
}

TEST_CASE("matrix market: general storage of symmetric content") {
    const auto path = temp_file("psdi_mm_general.mtx");
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n";
        out << "2 2 4\n";
        out << "1 1 2.0\n1 2 -1.0\n2 1 -1.0\n2 2 2.0\n";
    }
    const SparseMatrix G = read_matrix_market(path.string());

    const auto sym_path = temp_file("psdi_mm_sym.mtx");
    {
        std::ofstream out(sym_path);
        out << "%%MatrixMarket matrix coordinate real symmetric\n";
        out << "2 2 3\n";
        out << "1 1 2.0\n2 1 -1.0\n2 2 2.0\n";
    }
    const SparseMatrix S = read_matrix_market(sym_path.string());
    CHECK(G.row_ptr() == S.row_ptr());
    CHECK(G.col_idx() == S.col_idx());
    CHECK(G.values() == S.values());
    std::filesystem::remove(path);
    std::filesystem::remove(sym_path);
}

TEST_CASE("matrix market: malformed input is rejected") {
    const auto path = temp_file("psdi_mm_bad.mtx");
    auto write_and_expect_throw = [&](const char* content) {
        std::ofstream(path) << content;
        CHECK_THROWS_AS(read_matrix_market(path.string()), IoError);
    };
    // wrong field type
    write_and_expect_throw("%%MatrixMarket matrix coordinate complex symmetric\n1 1 1\n1 1 1 0\n");
    // nonsquare
    write_and_expect_throw("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n");
    // asymmetric numerical content
    write_and_expect_throw(
        "%%MatrixMarket matrix coordinate real general\n2 2 4\n1 1 1.0\n1 2 5.0\n2 1 -5.0\n2 2 1.0\n");
    // missing banner
    write_and_expect_throw("2 2 1\n1 1 1.0\n");
    std::filesystem::remove(path);
}

TEST_CASE("kernels: parallel versions agree with serial reference") {
    const index_t n = 20000; // above the dispatch threshold
    const Vector a = random_vector(n, 11);
    const Vector b = random_vector(n, 12);

    const double ds = kernels::serial::dot(a, b);
    const double dd = kernels::dot(a, b);
    CHECK(dd == doctest::Approx(ds).epsilon(1e-12));

    const SparseMatrix L = laplacian_2d(150); // n = 22500
    const Vector x = random_vector(L.dim(), 13);
    Vector ys(static_cast<std::size_t>(L.dim())), yd(static_cast<std::size_t>(L.dim()));
    kernels::serial::spmv(L.dim(), L.row_ptr().data(), L.col_idx().data(), L.values().data(),
                          x.data(), ys.data());
    kernels::spmv(L.dim(), L.row_ptr().data(), L.col_idx().data(), L.values().data(), x.data(),
                  yd.data());
    for (std::size_t i = 0; i < ys.size(); ++i) CHECK(yd[i] == ys[i]);

    Vector va = a, vb = a;
    kernels::serial::axpy(0.7, b, va);
    kernels::axpy(0.7, b, vb);
    for (std::size_t i = 0; i < va.size(); ++i) CHECK(vb[i] == va[i]);

    CHECK(kernels::max_abs(a) == kernels::serial::max_abs(a));
}

TEST_CASE("kernels: chunked dot is deterministic") {
    const Vector a = random_vector(50000, 21);
    const Vector b = random_vector(50000, 22);
    const double first = kernels::dot(a, b);
    for (int i = 0; i < 5; ++i) CHECK(kernels::dot(a, b) == first);
}
