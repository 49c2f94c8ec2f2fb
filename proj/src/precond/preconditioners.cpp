#include "sid/precond/preconditioners.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sid {

namespace {

class IdentityPreconditioner final : public Preconditioner {
public:
    explicit IdentityPreconditioner(index_t n) : Preconditioner(n) {}

private:
    void do_apply(std::span<const double> in, std::span<double> out) const override {
        std::copy(in.begin(), in.end(), out.begin());
    }
};

class InverseSpdPreconditioner final : public Preconditioner {
public:
    explicit InverseSpdPreconditioner(const SparseMatrix& B)
        : Preconditioner(B.dim()), factor_(B) {}

private:
    void do_apply(std::span<const double> in, std::span<double> out) const override {
        factor_.solve(in, out);
    }

    SparseCholeskyFactor factor_;
};

class SpdMatrixPreconditioner final : public Preconditioner {
public:
    explicit SpdMatrixPreconditioner(SparseMatrix B)
        : Preconditioner(B.dim()), B_(std::move(B)) {}

private:
    void do_apply(std::span<const double> in, std::span<double> out) const override {
        B_.multiply(in, out);
    }

    SparseMatrix B_;
};

class SaddleBlockPreconditioner final : public Preconditioner {
public:
    SaddleBlockPreconditioner(const SparseMatrix& K, const SparseMatrix& M, double tau)
        : Preconditioner(3 * K.dim()),
          m_(K.dim()),
          tau_(tau),
          mass_(M),
          k_factor_(K),
          m_factor_(M) {}

private:
    void do_apply(std::span<const double> in, std::span<double> out) const override {
        const auto m = static_cast<std::size_t>(m_);
        // block 1: (1/(2 tau)) M^{-1}
        m_factor_.solve(in.subspan(0, m), out.subspan(0, m));
        const double scale = 1.0 / (2.0 * tau_);
        for (std::size_t i = 0; i < m; ++i) out[i] *= scale;
        // block 2: M^{-1}
        m_factor_.solve(in.subspan(m, m), out.subspan(m, m));
        // block 3: K^{-1} M K^{-1}
        Vector z(m), mz(m);
        k_factor_.solve(in.subspan(2 * m, m), std::span<double>(z));
        mass_.multiply(z, mz);
        k_factor_.solve(std::span<const double>(mz), out.subspan(2 * m, m));
    }

    index_t m_;
    double tau_;
    SparseMatrix mass_;
    SparseCholeskyFactor k_factor_;
    SparseCholeskyFactor m_factor_;
};

} // namespace

PreconditionerPtr identity_preconditioner(index_t n) {
    if (n < 1) throw InvalidArgumentError("identity_preconditioner: dimension must be >= 1");
    return std::make_shared<IdentityPreconditioner>(n);
}

PreconditionerPtr inverse_spd_preconditioner(const SparseMatrix& B) {
    return std::make_shared<InverseSpdPreconditioner>(B);
}

PreconditionerPtr spd_matrix_preconditioner(SparseMatrix B) {
    return std::make_shared<SpdMatrixPreconditioner>(std::move(B));
}

PreconditionerPtr saddle_block_preconditioner(const SparseMatrix& K, const SparseMatrix& M,
                                              double tau) {
    if (K.dim() != M.dim())
        throw DimensionError("saddle_block_preconditioner: K and M dimensions differ");
    if (!(tau > 0.0))
        throw InvalidArgumentError("saddle_block_preconditioner: tau must be positive");
    return std::make_shared<SaddleBlockPreconditioner>(K, M, tau);
}

} // namespace sid
