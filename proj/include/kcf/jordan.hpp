#pragma once

#include "kcf/structure.hpp"

namespace kcf {

/// Columns of `basis` are Jordan chains: m * basis = basis * jordan_matrix(blocks),
/// with blocks in canonical (eigenvalue, degree) order.
template <class T>
struct JordanBasis {
    Matrix<T> basis;
    std::vector<FiniteDivisor<T>> blocks;
};

/// Exact mode: eigenvalues are the rational roots of det(sI - m); throws
/// IrrationalEigenvalue when they do not account for the full degree.
/// Approx mode: eigenvalues within 1e-6 * cluster_scale of each other are
/// merged (best effort); complex pairs throw ComplexEigenvalue.
template <class T>
JordanBasis<T> jordan_basis(const Matrix<T>& m, const ScalarMode& mode, double cluster_scale = 1.0);

/// Chains for a nilpotent matrix; blocks come out with eigenvalue 0, ascending degree.
template <class T>
JordanBasis<T> nilpotent_basis(const Matrix<T>& n, const ScalarMode& mode);

extern template JordanBasis<Rational> jordan_basis(const Matrix<Rational>&, const ScalarMode&, double);
extern template JordanBasis<double> jordan_basis(const Matrix<double>&, const ScalarMode&, double);
extern template JordanBasis<Rational> nilpotent_basis(const Matrix<Rational>&, const ScalarMode&);
extern template JordanBasis<double> nilpotent_basis(const Matrix<double>&, const ScalarMode&);

}  // namespace kcf
