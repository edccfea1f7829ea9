#pragma once

#include "kcf/solver.hpp"

namespace kcf {

/// A_n X^(n) + ... + A_1 X' + A_0 X = 0 with m×r coefficients.
template <class T>
struct HigherOrderSystem {
    std::vector<Matrix<T>> coefficients;  ///< A_0, ..., A_n

    std::size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    std::size_t m() const { return coefficients.empty() ? 0 : coefficients.front().rows(); }
    std::size_t r() const { return coefficients.empty() ? 0 : coefficients.front().cols(); }

    /// Order n = 1 system with A_1 = F and A_0 = -G.
    static HigherOrderSystem from_pencil(const Pencil<T>& p) { return {{-p.G(), p.F()}}; }

    template <class U>
    HigherOrderSystem<U> cast() const {
        HigherOrderSystem<U> out;
        for (const auto& a : coefficients) out.coefficients.push_back(a.template cast<U>());
        return out;
    }

    /// Throws InvalidStructure unless n ≥ 1 and all coefficients share one shape.
    void validate() const;

    /// Square with nonsingular A_n.
    bool is_nonsingular(const ScalarMode& mode) const;
};

template <class T>
struct InitialData {
    T t0 = T(0);
    std::vector<Vector<T>> derivatives;  ///< X(t0), X'(t0), ..., X^(n-1)(t0)
};

/// Companion pencil of size mn × (mn + r - m). Blocks 1..n-1 of the state have
/// length m, the last (the coordinate multiplied by A_n) has length r.
template <class T>
Pencil<T> linearize(const HigherOrderSystem<T>& sys);

/// Stacked Y(t0); throws DimensionMismatch on wrong counts or lengths.
template <class T>
Vector<T> lift_initial_conditions(const HigherOrderSystem<T>& sys, const InitialData<T>& init);

/// X(t) = Q_p^1 exp(J_p (t - t0)) Z_p0 with Q_p^1 the rows of Q_p belonging to X.
template <class T>
struct ProjectedSolution {
    T t0 = T(0);
    Matrix<T> Q_p1;
    std::vector<FiniteDivisor<T>> J_p;
    Vector<T> Z_p0;

    Vector<double> evaluate(double t) const;
};

/// Throws NotUnique for family solutions.
template <class T>
ProjectedSolution<T> project_solution(const Solution<T>& sol, const HigherOrderSystem<T>& sys);

#define KCF_LMDE_EXTERN(T)                                                                              \
    extern template struct HigherOrderSystem<T>;                                                        \
    extern template struct ProjectedSolution<T>;                                                        \
    extern template Pencil<T> linearize(const HigherOrderSystem<T>&);                                   \
    extern template Vector<T> lift_initial_conditions(const HigherOrderSystem<T>&, const InitialData<T>&); \
    extern template ProjectedSolution<T> project_solution(const Solution<T>&, const HigherOrderSystem<T>&);
KCF_LMDE_EXTERN(Rational)
KCF_LMDE_EXTERN(double)
#undef KCF_LMDE_EXTERN

}  // namespace kcf
