/// @file operator.hpp
/// @brief Abstract preconditioner interface: an SPD operator T applied to
///        vectors, with one instrumented count per application.

#ifndef SID_CORE_OPERATOR_HPP
#define SID_CORE_OPERATOR_HPP

#include <span>

#include "sid/core/types.hpp"

namespace sid {

/// An SPD linear operator applied to vectors. Concrete implementations range
/// from the identity to factorization-backed inverses and block-diagonal
/// compositions. Immutable after construction; apply() is reentrant provided
/// each caller owns its Instrumentation.
///
/// Composite operators (triangular solves, several internal products) still
/// count as a single preconditioner application.
class Preconditioner {
public:
    virtual ~Preconditioner() = default;

    index_t dim() const { return dim_; }

    void apply(std::span<const double> in, std::span<double> out,
               Instrumentation& inst) const {
        detail::require_dim(in.size(), static_cast<std::size_t>(dim_), "Preconditioner::apply in");
        detail::require_dim(out.size(), static_cast<std::size_t>(dim_), "Preconditioner::apply out");
        do_apply(in, out);
        inst.count_prec();
    }

    Vector apply(const Vector& in, Instrumentation& inst) const {
        Vector out(in.size());
        apply(std::span<const double>(in), std::span<double>(out), inst);
        return out;
    }

protected:
    explicit Preconditioner(index_t dim) : dim_(dim) {}
    virtual void do_apply(std::span<const double> in, std::span<double> out) const = 0;

private:
    index_t dim_;
};

} // namespace sid

#endif // SID_CORE_OPERATOR_HPP
