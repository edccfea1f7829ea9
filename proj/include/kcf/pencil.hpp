#pragma once

#include "kcf/matrix.hpp"
#include "kcf/polynomial.hpp"

#include <string_view>

namespace kcf {

/// The pencil sF - G. F and G always share a shape.
template <class T>
class Pencil {
   public:
    Pencil() = default;
    Pencil(Matrix<T> f, Matrix<T> g) : f_(std::move(f)), g_(std::move(g)) {
        if (f_.rows() != g_.rows() || f_.cols() != g_.cols())
            throw DimensionMismatch("pencil matrices must have equal shapes");
    }

    const Matrix<T>& F() const noexcept { return f_; }
    const Matrix<T>& G() const noexcept { return g_; }
    std::size_t rows() const noexcept { return f_.rows(); }
    std::size_t cols() const noexcept { return f_.cols(); }
    bool is_square() const noexcept { return rows() == cols(); }

    /// s0*F - G
    Matrix<T> at(const T& s0) const { return s0 * f_ - g_; }

    Pencil transpose() const { return Pencil(f_.transpose(), g_.transpose()); }

    template <class U>
    Pencil<U> cast() const {
        return Pencil<U>(f_.template cast<U>(), g_.template cast<U>());
    }

    bool operator==(const Pencil&) const = default;

   private:
    Matrix<T> f_, g_;
};

enum class Regularity { Regular, SingularNonSquare, SingularZeroDet };

std::string_view to_string(Regularity r);

template <class T>
using DetPolynomial = Polynomial<T>;

template <class T>
Regularity classify(const Pencil<T>& p, const ScalarMode& mode);

/// det(sF - G) by evaluation at s = 0, 1, ..., n and interpolation. The
/// identically zero determinant is the empty polynomial. Throws NotSquare.
template <class T>
DetPolynomial<T> det_polynomial(const Pencil<T>& p, const ScalarMode& mode);

/// Maximum rank of s0*F - G over the first min(rows, cols) + 2 primes.
template <class T>
std::size_t normal_rank(const Pencil<T>& p, const ScalarMode& mode);

struct NullSpaceDims {
    std::size_t d = 0;  ///< dim of the right rational null space (number of column minimal indices)
    std::size_t t = 0;  ///< dim of the left rational null space (number of row minimal indices)
    bool operator==(const NullSpaceDims&) const = default;
};

template <class T>
NullSpaceDims null_space_dims(const Pencil<T>& p, const ScalarMode& mode);

/// Deterministic sample points 2, 3, 5, 7, ...
std::vector<long> first_primes(std::size_t count);

extern template Regularity classify(const Pencil<Rational>&, const ScalarMode&);
extern template Regularity classify(const Pencil<double>&, const ScalarMode&);
extern template DetPolynomial<Rational> det_polynomial(const Pencil<Rational>&, const ScalarMode&);
extern template DetPolynomial<double> det_polynomial(const Pencil<double>&, const ScalarMode&);
extern template std::size_t normal_rank(const Pencil<Rational>&, const ScalarMode&);
extern template std::size_t normal_rank(const Pencil<double>&, const ScalarMode&);
extern template NullSpaceDims null_space_dims(const Pencil<Rational>&, const ScalarMode&);
extern template NullSpaceDims null_space_dims(const Pencil<double>&, const ScalarMode&);

}  // namespace kcf
