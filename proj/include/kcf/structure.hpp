#pragma once

#include "kcf/pencil.hpp"

#include <span>
#include <vector>

namespace kcf {

/// Elementary divisor (s - eigenvalue)^degree; contributes J_degree(eigenvalue).
template <class T>
struct FiniteDivisor {
    T eigenvalue;
    std::size_t degree = 1;

    bool operator==(const FiniteDivisor&) const = default;
};

/// Complete strict-equivalence invariants of a pencil.
///
/// Blocks are laid out as: Jordan part (fed), nilpotent part (ied), the
/// ε > 0 blocks L_ε, the ζ > 0 blocks L_ζ^T, then a trailing zero block with
/// h rows (ζ = 0) and g columns (ε = 0).
template <class T>
struct KroneckerStructure {
    std::vector<FiniteDivisor<T>> fed;
    std::vector<std::size_t> ied;
    std::vector<std::size_t> cmi;
    std::vector<std::size_t> rmi;

    std::size_t p() const;
    std::size_t q() const;
    std::size_t g() const;
    std::size_t h() const;
    std::size_t d() const { return cmi.size(); }
    std::size_t t() const { return rmi.size(); }

    std::size_t epsilon_width() const;  ///< Σ_{ε>0} (ε+1)
    std::size_t epsilon_height() const; ///< Σ_{ε>0} ε
    std::size_t zeta_width() const;     ///< Σ_{ζ>0} ζ
    std::size_t zeta_height() const;    ///< Σ_{ζ>0} (ζ+1)

    std::size_t rows() const { return p() + q() + epsilon_height() + zeta_height() + h(); }
    std::size_t cols() const { return p() + q() + epsilon_width() + zeta_width() + g(); }
    std::size_t normal_rank() const { return rows() - t(); }

    /// fed by (eigenvalue, degree); ied, cmi, rmi ascending.
    void canonicalize();
    KroneckerStructure canonical() const {
        auto c = *this;
        c.canonicalize();
        return c;
    }

    /// Throws InvalidStructure for zero-degree divisors.
    void validate() const;

    bool operator==(const KroneckerStructure&) const = default;
};

/// Column ranges of Q for [Q_p | Q_q | Q_ε | Q_ζ | Q_g].
struct ColumnPartition {
    std::size_t p = 0, q = 0, epsilon = 0, zeta = 0, g = 0;

    std::size_t p_begin() const { return 0; }
    std::size_t q_begin() const { return p; }
    std::size_t epsilon_begin() const { return p + q; }
    std::size_t zeta_begin() const { return p + q + epsilon; }
    std::size_t g_begin() const { return p + q + epsilon + zeta; }
    std::size_t total() const { return p + q + epsilon + zeta + g; }

    bool operator==(const ColumnPartition&) const = default;
};

template <class T>
ColumnPartition partition_of(const KroneckerStructure<T>& s) {
    return {s.p(), s.q(), s.epsilon_width(), s.zeta_width(), s.g()};
}

/// Direct sum of J_{p_j}(a_j) blocks (a_j on the diagonal, ones above it).
template <class T>
Matrix<T> jordan_matrix(std::span<const FiniteDivisor<T>> blocks);

/// Direct sum of nilpotent H_{q_j} blocks (ones on the superdiagonal).
template <class T>
Matrix<T> nilpotent_matrix(std::span<const std::size_t> degrees);

/// Canonical pair (F_K, G_K) of the canonicalized structure.
template <class T>
Pencil<T> assemble_canonical(const KroneckerStructure<T>& s);

/// As above, additionally requiring the bookkeeping to produce a rows×cols pencil.
template <class T>
Pencil<T> assemble_canonical(const KroneckerStructure<T>& s, std::size_t rows, std::size_t cols);

/// exp(J_k(a) t) = e^{a t} Σ_{j<k} N^j t^j / j!
template <class T>
Matrix<double> jordan_exp(const FiniteDivisor<T>& block, double t);

/// Block-diagonal extension over a list of Jordan blocks.
template <class T>
Matrix<double> jordan_exp(std::span<const FiniteDivisor<T>> blocks, double t);

/// "s-1", "(s+2)^3", "s" for eigenvalue 0.
template <class T>
std::string to_string(const FiniteDivisor<T>& f);

template <class T>
std::string to_string(const KroneckerStructure<T>& s);

#define KCF_STRUCTURE_EXTERN(T)                                                                  \
    extern template struct KroneckerStructure<T>;                                                \
    extern template Matrix<T> jordan_matrix(std::span<const FiniteDivisor<T>>);                  \
    extern template Matrix<T> nilpotent_matrix(std::span<const std::size_t>);                    \
    extern template Pencil<T> assemble_canonical(const KroneckerStructure<T>&);                  \
    extern template Pencil<T> assemble_canonical(const KroneckerStructure<T>&, std::size_t, std::size_t); \
    extern template Matrix<double> jordan_exp(const FiniteDivisor<T>&, double);                  \
    extern template Matrix<double> jordan_exp(std::span<const FiniteDivisor<T>>, double);        \
    extern template std::string to_string(const FiniteDivisor<T>&);                              \
    extern template std::string to_string(const KroneckerStructure<T>&);
KCF_STRUCTURE_EXTERN(Rational)
KCF_STRUCTURE_EXTERN(double)
#undef KCF_STRUCTURE_EXTERN

}  // namespace kcf

namespace kcf {

template <class T>
Matrix<double> jordan_exp(const std::vector<FiniteDivisor<T>>& blocks, double t) {
    return jordan_exp<T>(std::span<const FiniteDivisor<T>>(blocks), t);
}

template <class T>
Matrix<T> jordan_matrix(const std::vector<FiniteDivisor<T>>& blocks) {
    return jordan_matrix<T>(std::span<const FiniteDivisor<T>>(blocks));
}

}  // namespace kcf
