#pragma once

#include "kcf/structure.hpp"

namespace kcf {

/// P (sF - G) Q = s F_K - G_K with P, Q nonsingular and (F_K, G_K) in
/// canonical block order. In exact mode the identity is checked before
/// returning; in approx mode it holds up to rounding.
template <class T>
struct KroneckerDecomposition {
    Matrix<T> P;
    Matrix<T> Q;
    Pencil<T> canonical;
    KroneckerStructure<T> structure;
    ColumnPartition partition;

    const Matrix<T>& F_K() const { return canonical.F(); }
    const Matrix<T>& G_K() const { return canonical.G(); }

    Matrix<T> Q_p() const { return Q.block(0, partition.p_begin(), Q.rows(), partition.p); }
    Matrix<T> Q_q() const { return Q.block(0, partition.q_begin(), Q.rows(), partition.q); }
    Matrix<T> Q_epsilon() const { return Q.block(0, partition.epsilon_begin(), Q.rows(), partition.epsilon); }
    Matrix<T> Q_zeta() const { return Q.block(0, partition.zeta_begin(), Q.rows(), partition.zeta); }
    Matrix<T> Q_g() const { return Q.block(0, partition.g_begin(), Q.rows(), partition.g); }
};

/// Throws IrrationalEigenvalue (exact) or ComplexEigenvalue (approx) when the
/// finite spectrum cannot be represented in T.
template <class T>
KroneckerDecomposition<T> reduce(const Pencil<T>& pencil, const ScalarMode& mode);

/// Structure only; same failure modes as reduce.
template <class T>
KroneckerStructure<T> kronecker_structure(const Pencil<T>& pencil, const ScalarMode& mode);

extern template KroneckerDecomposition<Rational> reduce(const Pencil<Rational>&, const ScalarMode&);
extern template KroneckerDecomposition<double> reduce(const Pencil<double>&, const ScalarMode&);
extern template KroneckerStructure<Rational> kronecker_structure(const Pencil<Rational>&, const ScalarMode&);
extern template KroneckerStructure<double> kronecker_structure(const Pencil<double>&, const ScalarMode&);

}  // namespace kcf
