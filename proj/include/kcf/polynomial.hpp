#pragma once

#include "kcf/matrix.hpp"

#include <string>
#include <vector>

namespace kcf {

/// Univariate polynomial, coefficients in ascending degree. The zero
/// polynomial is the empty list; trailing zero coefficients are never stored.
template <class T>
struct Polynomial {
    std::vector<T> coefficients;

    Polynomial() = default;
    explicit Polynomial(std::vector<T> c) : coefficients(std::move(c)) { trim(); }

    bool is_zero() const noexcept { return coefficients.empty(); }
    int degree() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
    const T& leading() const { return coefficients.back(); }

    T evaluate(const T& x) const {
        T acc(0);
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    void trim() {
        while (!coefficients.empty() && ScalarTraits<T>::is_zero(coefficients.back())) coefficients.pop_back();
    }

    bool operator==(const Polynomial&) const = default;
};

/// Newton-form interpolation through (xs[i], ys[i]); xs must be distinct.
template <class T>
Polynomial<T> interpolate(const std::vector<T>& xs, const std::vector<T>& ys);

template <class T>
std::string to_string(const Polynomial<T>& p, const std::string& var = "s");

Polynomial<Rational> derivative(const Polynomial<Rational>& p);

struct PolynomialDivision {
    Polynomial<Rational> quotient, remainder;
};
PolynomialDivision divide(const Polynomial<Rational>& num, const Polynomial<Rational>& den);

/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial<Rational> gcd(Polynomial<Rational> a, Polynomial<Rational> b);

struct RationalRoot {
    Rational value;
    std::size_t multiplicity = 0;
};

/// All rational roots with multiplicity, ascending. Candidates come from
/// numeric roots of the square-free part refined by continued fractions and
/// are confirmed by exact evaluation, so every reported root is exact.
std::vector<RationalRoot> rational_roots(const Polynomial<Rational>& p);

extern template Polynomial<Rational> interpolate(const std::vector<Rational>&, const std::vector<Rational>&);
extern template Polynomial<double> interpolate(const std::vector<double>&, const std::vector<double>&);
extern template std::string to_string(const Polynomial<Rational>&, const std::string&);
extern template std::string to_string(const Polynomial<double>&, const std::string&);

}  // namespace kcf
