#include "kcf/pencil.hpp"

#include "kcf/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kcf {

std::string_view to_string(Regularity r) {
    switch (r) {
        case Regularity::Regular: return "Regular";
        case Regularity::SingularNonSquare: return "SingularNonSquare";
        case Regularity::SingularZeroDet: return "SingularZeroDet";
    }
    return "?";
}

std::vector<long> first_primes(std::size_t count) {
    std::vector<long> primes;
    for (long c = 2; primes.size() < count; ++c)
        if (std::none_of(primes.begin(), primes.end(), [c](long q) { return c % q == 0; })) primes.push_back(c);
    return primes;
}

template <class T>
DetPolynomial<T> det_polynomial(const Pencil<T>& p, const ScalarMode& mode) {
    require_mode<T>(mode);
    if (!p.is_square()) throw NotSquare();
    const std::size_t n = p.rows();
    std::vector<T> xs, ys;
    double largest = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const T s0(static_cast<long>(k));
        xs.push_back(s0);
        ys.push_back(determinant(p.at(s0), mode));
        largest = std::max(largest, ScalarTraits<T>::magnitude(ys.back()));
    }
    if constexpr (std::is_same_v<T, double>) {
        if (largest <= mode.tolerance() * norm_inf(p.F()) * norm_inf(p.G())) return {};
    }
    return interpolate(xs, ys);
}

template <class T>
Regularity classify(const Pencil<T>& p, const ScalarMode& mode) {
    if (!p.is_square()) return Regularity::SingularNonSquare;
    return det_polynomial(p, mode).is_zero() ? Regularity::SingularZeroDet : Regularity::Regular;
}

template <class T>
std::size_t normal_rank(const Pencil<T>& p, const ScalarMode& mode) {
    require_mode<T>(mode);
    std::size_t best = 0;
    for (long s0 : first_primes(std::min(p.rows(), p.cols()) + 2)) best = std::max(best, rank(p.at(T(s0)), mode));
    return best;
}

template <class T>
NullSpaceDims null_space_dims(const Pencil<T>& p, const ScalarMode& mode) {
    const std::size_t rho = normal_rank(p, mode);
    return {p.cols() - rho, p.rows() - rho};
}

template Regularity classify(const Pencil<Rational>&, const ScalarMode&);
template Regularity classify(const Pencil<double>&, const ScalarMode&);
template DetPolynomial<Rational> det_polynomial(const Pencil<Rational>&, const ScalarMode&);
template DetPolynomial<double> det_polynomial(const Pencil<double>&, const ScalarMode&);
template std::size_t normal_rank(const Pencil<Rational>&, const ScalarMode&);
template std::size_t normal_rank(const Pencil<double>&, const ScalarMode&);
template NullSpaceDims null_space_dims(const Pencil<Rational>&, const ScalarMode&);
template NullSpaceDims null_space_dims(const Pencil<double>&, const ScalarMode&);

}  // namespace kcf
