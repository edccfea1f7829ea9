#pragma once

#include "kcf/matrix.hpp"

#include <optional>

namespace kcf {

// Exact mode: fraction-free (Bareiss) elimination over integer-scaled rows.
// Approx mode: column-pivoted Householder QR; pivots at or below
// tolerance * max(rows, cols) * |largest pivot| count as zero.
std::size_t rank(const Matrix<Rational>& m, const ScalarMode& mode);
std::size_t rank(const Matrix<double>& m, const ScalarMode& mode);

Rational determinant(const Matrix<Rational>& m, const ScalarMode& mode);
double determinant(const Matrix<double>& m, const ScalarMode& mode);

/// Some x with a*x = b, or nullopt when the system is inconsistent.
std::optional<Vector<Rational>> solve_linear(const Matrix<Rational>& a, const Vector<Rational>& b, const ScalarMode& mode);
std::optional<Vector<double>> solve_linear(const Matrix<double>& a, const Vector<double>& b, const ScalarMode& mode);

/// solve_linear without the approx-mode residual gate: returns the
/// minimum-norm least-squares solution. Exact mode still reports inconsistency.
std::optional<Vector<Rational>> solve_least_squares(const Matrix<Rational>& a, const Vector<Rational>& b,
                                                    const ScalarMode& mode);
std::optional<Vector<double>> solve_least_squares(const Matrix<double>& a, const Vector<double>& b,
                                                  const ScalarMode& mode);

Matrix<Rational> invert(const Matrix<Rational>& m, const ScalarMode& mode);
Matrix<double> invert(const Matrix<double>& m, const ScalarMode& mode);

// `reference` (approx mode only) is a magnitude below which singular values
// count as zero even when they dominate the matrix itself; exact mode ignores it.

/// Columns form a basis of the right null space.
Matrix<Rational> kernel(const Matrix<Rational>& m, const ScalarMode& mode, double reference = 0.0);
Matrix<double> kernel(const Matrix<double>& m, const ScalarMode& mode, double reference = 0.0);

/// Columns form a basis of the column space. In exact mode the columns are a
/// subset of the input columns; in approx mode they are orthonormal.
Matrix<Rational> range_basis(const Matrix<Rational>& m, const ScalarMode& mode, double reference = 0.0);
Matrix<double> range_basis(const Matrix<double>& m, const ScalarMode& mode, double reference = 0.0);

/// New columns that extend the independent set `base` to a basis of
/// span(base) + span(candidates). The new columns lie in span(candidates)
/// whenever span(base) ⊆ span(candidates).
Matrix<Rational> extend_basis(const Matrix<Rational>& base, const Matrix<Rational>& candidates, const ScalarMode& mode,
                              double reference = 0.0);
Matrix<double> extend_basis(const Matrix<double>& base, const Matrix<double>& candidates, const ScalarMode& mode,
                              double reference = 0.0);

// Subspace helpers; subspaces are represented by basis columns.

template <class T>
Matrix<T> subspace_sum(const Matrix<T>& u, const Matrix<T>& v, const ScalarMode& mode, double reference = 0.0) {
    return range_basis(hstack(u, v), mode, reference);
}

template <class T>
Matrix<T> subspace_intersection(const Matrix<T>& u, const Matrix<T>& v, const ScalarMode& mode,
                                double reference = 0.0) {
    if (u.cols() == 0 || v.cols() == 0) return Matrix<T>(u.rows(), 0);
    const Matrix<T> coeffs = kernel(hstack(u, -v), mode, reference);
    const Matrix<T> vectors = u * coeffs.block(0, 0, u.cols(), coeffs.cols());
    return range_basis(vectors, mode, reference);
}

/// {x : a*x ∈ span(u)}.
template <class T>
Matrix<T> preimage(const Matrix<T>& a, const Matrix<T>& u, const ScalarMode& mode, double reference = 0.0) {
    const Matrix<T> coeffs = kernel(hstack(a, -u), mode, reference);
    return range_basis(coeffs.block(0, 0, a.cols(), coeffs.cols()), mode, reference);
}

template <class T>
Matrix<T> image(const Matrix<T>& a, const Matrix<T>& u, const ScalarMode& mode, double reference = 0.0) {
    return range_basis(a * u, mode, reference);
}

/// Appends columns to the independent set `base` to form a nonsingular n×n matrix.
template <class T>
Matrix<T> complete_basis(const Matrix<T>& base, const ScalarMode& mode, double reference = 0.0) {
    return hstack(base, extend_basis(base, Matrix<T>::identity(base.rows()), mode, reference));
}

}  // namespace kcf
