#pragma once

#include "kcf/lmde.hpp"

#include <filesystem>
#include <optional>
#include <string_view>

namespace kcf {

enum class ProblemForm { Pencil, HigherOrder };

/// A parsed problem file. Entries are kept exact; approx-mode callers cast.
struct Problem {
    ProblemForm form = ProblemForm::Pencil;
    HigherOrderSystem<Rational> system;  ///< order 1 (A_1 = F, A_0 = -G) for pencil input
    Pencil<Rational> pencil;             ///< linearized system
    std::optional<Vector<Rational>> y0;  ///< lifted initial state, when given
    Rational t0 = 0;
};

/// Keys: "F","G" or "order","A" (A_0..A_n, optional "m","r"); initial data as
/// "Y0" (stacked state) or "X_derivatives"; optional "t0". Entries are strings
/// ("-2", "1/3", "0.25") or JSON numbers, which are read through their
/// shortest decimal form. Unknown keys are ignored. Throws ParseError.
Problem parse_problem(std::string_view json_text);
Problem load_problem(const std::filesystem::path& path);

/// Serializes a pencil problem with exact string entries.
std::string write_pencil_problem(const Pencil<Rational>& pencil, const std::optional<Vector<Rational>>& y0,
                                 const Rational& t0);

}  // namespace kcf
