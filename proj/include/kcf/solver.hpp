#pragma once

#include "kcf/kronecker.hpp"

#include <optional>
#include <string_view>

namespace kcf {

/// The five decoupled subsystems of F Y' = G Y in canonical coordinates Z = Q^{-1} Y.
template <class T>
struct SubsystemSet {
    Matrix<T> J_p;                      ///< Z_p' = J_p Z_p
    Matrix<T> H_q;                      ///< H_q Z_q' = Z_q, forcing Z_q = 0
    std::vector<std::size_t> epsilon;   ///< ε > 0 chains z_i' = z_{i+1}
    std::vector<std::size_t> zeta;      ///< ζ > 0 blocks, forcing Z_ζ = 0
    std::size_t h = 0, g = 0;           ///< zero block 0_{h,g}
    ColumnPartition partition;

    std::size_t p() const { return J_p.rows(); }
    std::size_t q() const { return H_q.rows(); }
};

template <class T>
SubsystemSet<T> decompose_subsystems(const KroneckerDecomposition<T>& dec);

template <class T>
struct ConsistencyResult {
    bool consistent = false;
    Vector<T> Z_p0;  ///< empty unless consistent
};

/// Solves Y0 = Q_p Z_p0.
template <class T>
ConsistencyResult<T> check_consistency(const Vector<T>& y0, const KroneckerDecomposition<T>& dec,
                                       const ScalarMode& mode);

enum class SolutionKind { Unique, Family, InconsistentFamily };

std::string_view to_string(SolutionKind k);

/// Y(t) = Q_p exp(J_p (t - t0)) z + free_basis c, where z = Z_p0 for Unique
/// solutions and the first p constants otherwise; c are the remaining constants.
template <class T>
struct Solution {
    SolutionKind kind = SolutionKind::Unique;
    T t0 = T(0);
    Matrix<T> Q_p;
    std::vector<FiniteDivisor<T>> J_p;
    Vector<T> Z_p0;
    Vector<T> Y0;          ///< the initial state the solution was requested for
    Matrix<T> free_basis;  ///< ε-chain lead columns, then Q_g columns
    std::size_t free_dim = 0;

    std::size_t state_dim() const { return Q_p.rows(); }
    bool is_family() const { return kind != SolutionKind::Unique; }
};

template <class T>
Solution<T> solve_ivp(const KroneckerDecomposition<T>& dec, const Vector<T>& y0, const T& t0, const ScalarMode& mode);

/// Runs reduce first; propagates IrrationalEigenvalue / ComplexEigenvalue.
template <class T>
Solution<T> solve_ivp(const Pencil<T>& pencil, const Vector<T>& y0, const T& t0, const ScalarMode& mode);

/// Y(t). Constants are required (length free_dim) exactly for family variants;
/// otherwise MissingConstants / WrongConstantCount. For a Unique solution at
/// t == t0 the value is formed exactly in T before conversion.
template <class T>
Vector<double> evaluate(const Solution<T>& sol, double t, const std::optional<Vector<double>>& constants = std::nullopt);

/// Y'(t) from the analytic derivative Q_p J_p exp(J_p (t - t0)) z.
template <class T>
Vector<double> evaluate_derivative(const Solution<T>& sol, double t,
                                   const std::optional<Vector<double>>& constants = std::nullopt);

/// p + d: regular-flow constants plus one constant per column minimal index.
template <class T>
std::size_t solution_space_dimension(const KroneckerStructure<T>& s) {
    return s.p() + s.d();
}

#define KCF_SOLVER_EXTERN(T)                                                                                       \
    extern template SubsystemSet<T> decompose_subsystems(const KroneckerDecomposition<T>&);                       \
    extern template ConsistencyResult<T> check_consistency(const Vector<T>&, const KroneckerDecomposition<T>&,    \
                                                           const ScalarMode&);                                    \
    extern template Solution<T> solve_ivp(const KroneckerDecomposition<T>&, const Vector<T>&, const T&,           \
                                          const ScalarMode&);                                                     \
    extern template Solution<T> solve_ivp(const Pencil<T>&, const Vector<T>&, const T&, const ScalarMode&);       \
    extern template Vector<double> evaluate(const Solution<T>&, double, const std::optional<Vector<double>>&);    \
    extern template Vector<double> evaluate_derivative(const Solution<T>&, double,                                \
                                                       const std::optional<Vector<double>>&);
KCF_SOLVER_EXTERN(Rational)
KCF_SOLVER_EXTERN(double)
#undef KCF_SOLVER_EXTERN

}  // namespace kcf
