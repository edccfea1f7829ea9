#pragma once

#include "kcf/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kcf {

enum class ScalarKind { Exact, Approx };

/// Arithmetic regime for structure decisions. Exact carries no tolerance;
/// Approx carries a strictly positive relative rank tolerance.
class ScalarMode {
   public:
    static constexpr double kDefaultTolerance = 0x1p-40;

    static ScalarMode exact() { return ScalarMode(ScalarKind::Exact, 0.0); }
    static ScalarMode approx(double tolerance = kDefaultTolerance) {
        if (!(tolerance > 0.0) || !std::isfinite(tolerance))
            throw std::invalid_argument("approx tolerance must be a positive finite number");
        return ScalarMode(ScalarKind::Approx, tolerance);
    }

    ScalarKind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == ScalarKind::Exact; }
    double tolerance() const noexcept { return tolerance_; }

    bool operator==(const ScalarMode&) const = default;

   private:
    ScalarMode(ScalarKind kind, double tolerance) : kind_(kind), tolerance_(tolerance) {}

    ScalarKind kind_;
    double tolerance_;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr ScalarKind kind = ScalarKind::Exact;
    static ScalarMode default_mode() { return ScalarMode::exact(); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational from_rational(const Rational& x) { return x; }
    static std::string format(const Rational& x) { return kcf::to_string(x); }
};

template <>
struct ScalarTraits<double> {
    static constexpr ScalarKind kind = ScalarKind::Approx;
    static ScalarMode default_mode() { return ScalarMode::approx(); }
    static bool is_zero(double x) { return x == 0.0; }
    static double magnitude(double x) { return std::abs(x); }
    static double to_double(double x) { return x; }
    static double from_rational(const Rational& x) { return x.get_d(); }
    static std::string format(double x);
};

/// Throws std::invalid_argument if `mode` does not match the scalar type T.
template <class T>
void require_mode(const ScalarMode& mode) {
    if (mode.kind() != ScalarTraits<T>::kind)
        throw std::invalid_argument(mode.is_exact() ? "exact mode requires rational matrices"
                                                    : "approx mode requires binary64 matrices");
}

}  // namespace kcf
