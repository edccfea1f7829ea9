#include "kcf/rational.hpp"

#include "kcf/errors.hpp"
#include "kcf/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace kcf {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string original(text);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty number");

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + original + "'");
        const mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + original + "'");
        value = Rational(mpz_class(std::string(num), 10), d);
    } else {
        long exponent = 0;
        if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) throw ParseError("malformed exponent in '" + original + "'");
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
            text = text.substr(0, e);
        }
        std::string digits;
        if (const auto dot = text.find('.'); dot != std::string_view::npos) {
            const auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
            if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
                (!frac.empty() && !all_digits(frac)))
                throw ParseError("malformed decimal '" + original + "'");
            digits = std::string(whole) + std::string(frac);
            exponent -= static_cast<long>(frac.size());
        } else {
            if (!all_digits(text)) throw ParseError("malformed number '" + original + "'");
            digits = std::string(text);
        }
        mpz_class n(digits, 10);
        if (exponent >= 0)
            value = Rational(n * pow10(static_cast<unsigned long>(exponent)));
        else
            value = Rational(n, pow10(static_cast<unsigned long>(-exponent)));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw ParseError("non-finite number");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_str();
}

std::string ScalarTraits<double>::format(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace kcf
