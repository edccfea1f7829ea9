#include "kcf/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace kcf {

template <class T>
Polynomial<T> interpolate(const std::vector<T>& xs, const std::vector<T>& ys) {
    if (xs.size() != ys.size()) throw DimensionMismatch("interpolate: size mismatch");
    const std::size_t n = xs.size();
    std::vector<T> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) break;
        }
    // Horner on the Newton form: p = dd0 + (s-x0)(dd1 + (s-x1)(dd2 + ...)).
    std::vector<T> c;
    for (std::size_t k = n; k-- > 0;) {
        std::vector<T> next(c.size() + 1, T(0));
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= xs[k] * c[j];
        }
        next[0] += dd[k];
        c = std::move(next);
    }
    return Polynomial<T>(std::move(c));
}

template <class T>
std::string to_string(const Polynomial<T>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = p.coefficients.size(); k-- > 0;) {
        const T& c = p.coefficients[k];
        if (ScalarTraits<T>::is_zero(c)) continue;
        std::string coeff = ScalarTraits<T>::format(c);
        const bool negative = coeff.front() == '-';
        if (negative) coeff.erase(0, 1);
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (k == 0 || coeff != "1") out += (k > 0 && coeff.find('/') != std::string::npos) ? "(" + coeff + ")" : coeff;
        if (k > 0) out += (k == 0 || coeff != "1" ? "*" : "") + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return out;
}

template Polynomial<Rational> interpolate(const std::vector<Rational>&, const std::vector<Rational>&);
template Polynomial<double> interpolate(const std::vector<double>&, const std::vector<double>&);
template std::string to_string(const Polynomial<Rational>&, const std::string&);
template std::string to_string(const Polynomial<double>&, const std::string&);

Polynomial<Rational> derivative(const Polynomial<Rational>& p) {
    std::vector<Rational> c;
    for (std::size_t k = 1; k < p.coefficients.size(); ++k) c.push_back(p.coefficients[k] * static_cast<long>(k));
    return Polynomial<Rational>(std::move(c));
}

PolynomialDivision divide(const Polynomial<Rational>& num, const Polynomial<Rational>& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = num.coefficients;
    const int dn = den.degree();
    std::vector<Rational> quot(rem.size() >= den.coefficients.size() ? rem.size() - den.coefficients.size() + 1 : 0);
    for (int k = static_cast<int>(rem.size()) - 1; k >= dn; --k) {
        const Rational f = rem[static_cast<std::size_t>(k)] / den.leading();
        quot[static_cast<std::size_t>(k - dn)] = f;
        if (sgn(f) == 0) continue;
        for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k - dn + j)] -= f * den.coefficients[static_cast<std::size_t>(j)];
    }
    return {Polynomial<Rational>(std::move(quot)), Polynomial<Rational>(std::move(rem))};
}

Polynomial<Rational> gcd(Polynomial<Rational> a, Polynomial<Rational> b) {
    while (!b.is_zero()) {
        auto r = divide(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    const Rational lead = a.leading();
    for (auto& c : a.coefficients) c /= lead;
    return a;
}

namespace {

// Continued-fraction convergents of x with denominators up to `max_den`.
std::vector<Rational> convergents(double x, double max_den) {
    std::vector<Rational> out;
    mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(rest);
        if (!std::isfinite(a) || std::abs(a) > 1e18) break;
        const mpz_class ai(a);
        const mpz_class h = ai * h_prev + h_prev2, k = ai * k_prev + k_prev2;
        if (k.get_d() > max_den) break;
        out.emplace_back(h, k);
        out.back().canonicalize();
        h_prev2 = h_prev, h_prev = h, k_prev2 = k_prev, k_prev = k;
        const double frac = rest - a;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
    }
    return out;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const Polynomial<Rational>& p) {
    std::vector<RationalRoot> roots;
    if (p.degree() <= 0) return roots;

    const Polynomial<Rational> square_free = divide(p, gcd(p, derivative(p))).quotient;
    std::vector<Rational> found;
    if (square_free.degree() >= 1) {
        const int n = square_free.degree();
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        const double lead = square_free.leading().get_d();
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) companion(i, n - 1) = -square_free.coefficients[static_cast<std::size_t>(i)].get_d() / lead;
        const Eigen::VectorXcd numeric = companion.eigenvalues();
        for (Eigen::Index i = 0; i < numeric.size(); ++i) {
            const auto z = numeric(i);
            if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
            for (const Rational& c : convergents(z.real(), 1e12)) {
                if (std::abs(c.get_d() - z.real()) > 1e-6 * std::max(1.0, std::abs(z.real()))) continue;
                if (sgn(square_free.evaluate(c)) == 0) {
                    if (std::find(found.begin(), found.end(), c) == found.end()) found.push_back(c);
                    break;
                }
            }
        }
    }
    std::sort(found.begin(), found.end());
    for (const Rational& r : found) {
        const Polynomial<Rational> linear(std::vector<Rational>{-r, Rational(1)});
        Polynomial<Rational> rest = p;
        std::size_t mult = 0;
        for (;;) {
            auto div = divide(rest, linear);
            if (!div.remainder.is_zero()) break;
            rest = std::move(div.quotient);
            ++mult;
        }
        roots.push_back({r, mult});
    }
    return roots;
}

}  // namespace kcf
