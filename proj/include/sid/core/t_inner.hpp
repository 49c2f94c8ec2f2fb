/// @file t_inner.hpp
/// @brief Inner products, T-weighted inner products and the T-norm,
///        all instrumented.

#ifndef SID_CORE_T_INNER_HPP
#define SID_CORE_T_INNER_HPP

#include <cmath>
#include <span>

#include "sid/core/kernels.hpp"
#include "sid/core/operator.hpp"
#include "sid/core/types.hpp"

namespace sid {

/// Euclidean inner product; counts one inner product.
inline double dot(std::span<const double> a, std::span<const double> b,
                  Instrumentation& inst) {
    detail::require_dim(a.size(), b.size(), "dot");
    inst.count_inner_product();
    return kernels::dot(a, b);
}

/// Inner product evaluated for residual monitoring only; tallied separately
/// so solver inner-product rates stay comparable across tracking modes.
inline double dot_monitor(std::span<const double> a, std::span<const double> b,
                          Instrumentation& inst) {
    detail::require_dim(a.size(), b.size(), "dot_monitor");
    inst.count_monitor_inner_product();
    return kernels::dot(a, b);
}

/// (u, T v): one preconditioner application plus one inner product.
inline double t_inner(const Vector& u, const Vector& v, const Preconditioner& T,
                      Instrumentation& inst) {
    detail::require_dim(u.size(), v.size(), "t_inner");
    Vector tv = T.apply(v, inst);
    return dot(u, tv, inst);
}

/// (u, T v) with T v already available: one inner product only.
inline double t_inner_cached(const Vector& u, const Vector& tv, Instrumentation& inst) {
    return dot(u, tv, inst);
}

inline double t_norm(const Vector& u, const Preconditioner& T, Instrumentation& inst) {
    return std::sqrt(std::max(0.0, t_inner(u, u, T, inst)));
}

/// The inner-product space induced by an SPD operator T.
class TInnerProduct {
public:
    explicit TInnerProduct(const Preconditioner& T) : T_(T) {}

    double inner(const Vector& u, const Vector& v, Instrumentation& inst) const {
        return t_inner(u, v, T_, inst);
    }
    double norm(const Vector& u, Instrumentation& inst) const {
        return t_norm(u, T_, inst);
    }
    const Preconditioner& preconditioner() const { return T_; }

private:
    const Preconditioner& T_;
};

} // namespace sid

#endif // SID_CORE_T_INNER_HPP
