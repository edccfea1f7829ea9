#include "examples.hpp"

#include "kcf/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace kcf;
using namespace kcf::testing;

namespace {

Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix<Rational> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

Matrix<Rational> random_nonsingular(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        auto m = random_matrix(rng, n, n);
        if (rank(m, ScalarMode::exact()) == n) return m;
    }
}

}  // namespace

TEST_SUITE("scalar_matrix_core") {
    TEST_CASE("scalar modes") {
        CHECK(ScalarMode::exact().is_exact());
        CHECK(ScalarMode::approx().tolerance() == doctest::Approx(0x1p-40));
        CHECK_THROWS_AS(ScalarMode::approx(0.0), std::invalid_argument);
        CHECK_THROWS_AS(rank(Matrix<double>::identity(2), ScalarMode::exact()), std::invalid_argument);
    }

    TEST_CASE("rational parsing") {
        CHECK(parse_rational("-2") == Rational(-2));
        CHECK(parse_rational("1/3") == Rational(1, 3));
        CHECK(parse_rational(" 0.25 ") == Rational(1, 4));
        CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
        CHECK(parse_rational("010") == Rational(10));
        CHECK(parse_rational("0.08") == Rational(2, 25));
        CHECK(parse_rational("09/011") == Rational(9, 11));
        CHECK(rational_from_double(0.1) == Rational(1, 10));
        CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
        CHECK_THROWS_AS(parse_rational("abc"), ParseError);
        CHECK_THROWS_AS(parse_rational(""), ParseError);
    }

    TEST_CASE("rank examples") {
        const auto exact = ScalarMode::exact();
        CHECK(rank(Matrix<Rational>::identity(3), exact) == 3);
        CHECK(rank(Matrix<Rational>(2, 5), exact) == 0);
        CHECK(rank(example2().F(), exact) == 4);
        CHECK(rank(example2().F().cast<double>(), ScalarMode::approx()) == 4);
    }

    TEST_CASE("solve_linear examples") {
        const auto exact = ScalarMode::exact();
        const auto x = solve_linear(example2_Qp(), example2_consistent_y0(), exact);
        REQUIRE(x.has_value());
        CHECK(*x == Vector<Rational>{1, -2});
        CHECK_FALSE(solve_linear(example2_Qp(), example2_inconsistent_y0(), exact).has_value());
        CHECK(*solve_linear(Matrix<Rational>::identity(2), Vector<Rational>{3, 4}, exact) == Vector<Rational>{3, 4});

        const auto xd = solve_linear(example2_Qp().cast<double>(), Vector<double>{0, -1, 0, 1, -1}, ScalarMode::approx());
        REQUIRE(xd.has_value());
        CHECK((*xd)[0] == doctest::Approx(1.0));
        CHECK((*xd)[1] == doctest::Approx(-2.0));
        CHECK_FALSE(solve_linear(example2_Qp().cast<double>(), Vector<double>{0, 0, 0, 1, 1}, ScalarMode::approx()));
    }

    TEST_CASE("invert examples") {
        const auto exact = ScalarMode::exact();
        CHECK(invert(Matrix<Rational>::identity(4), exact) == Matrix<Rational>::identity(4));
        const auto q = example2_Q();
        const auto qi = invert(q, exact);
        CHECK(q * qi == Matrix<Rational>::identity(5));
        // oracle: sympy Q.inv()
        CHECK(qi == Matrix<Rational>{{1, 0, 0, 1, 0}, {0, 1, 1, 0, 1}, {0, 0, 0, 1, 1}, {1, 0, 1, 0, 0}, {0, 0, 1, 1, 1}});
        CHECK_THROWS_AS(invert(Matrix<Rational>(2, 2), exact), SingularMatrix);
        CHECK_THROWS_AS(invert(Matrix<Rational>(2, 3), exact), NotSquare);
        CHECK_THROWS_AS(invert(Matrix<double>(2, 2), ScalarMode::approx()), SingularMatrix);
    }

    TEST_CASE("determinant") {
        CHECK(determinant(Matrix<Rational>{{1, 2}, {3, 4}}, ScalarMode::exact()) == Rational(-2));
        CHECK(determinant(Matrix<Rational>{{Rational(1, 2), 0}, {0, Rational(2, 3)}}, ScalarMode::exact()) == Rational(1, 3));
    }

    TEST_CASE("kernel, range and extension") {
        const auto exact = ScalarMode::exact();
        const Matrix<Rational> m{{1, 2, 3}, {2, 4, 6}};
        const auto k = kernel(m, exact);
        CHECK(k.cols() == 2);
        CHECK((m * k).is_zero());
        CHECK(range_basis(m, exact).cols() == 1);
        const auto ext = extend_basis(range_basis(m, exact), Matrix<Rational>::identity(2), exact);
        CHECK(ext.cols() == 1);
        CHECK(rank(hstack(range_basis(m, exact), ext), exact) == 2);
        CHECK(complete_basis(Matrix<Rational>(3, 0), exact) == Matrix<Rational>::identity(3));
    }

    TEST_CASE("rank properties over random matrices") {
        std::mt19937_64 rng(7);
        const auto exact = ScalarMode::exact();
        for (int trial = 0; trial < 50; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(1, 8);
            const std::size_t r = dim(rng), c = dim(rng);
            // Force rank deficiency half of the time.
            Matrix<Rational> m = random_matrix(rng, r, c);
            if (trial % 2 == 0 && r > 1) m = random_matrix(rng, r, 1) * random_matrix(rng, 1, c);
            const std::size_t rk = rank(m, exact);
            CHECK(rk == rank(m.transpose(), exact));
            const auto p = random_nonsingular(rng, r), q = random_nonsingular(rng, c);
            CHECK(rank(p * m * q, exact) == rk);
            CHECK(rank(m.cast<double>(), ScalarMode::approx()) == rk);
        }
    }

    TEST_CASE("solve and invert properties") {
        std::mt19937_64 rng(11);
        const auto exact = ScalarMode::exact();
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 1 + trial % 6;
            const auto a = random_nonsingular(rng, n);
            const auto ai = invert(a, exact);
            CHECK(a * ai == Matrix<Rational>::identity(n));
            CHECK(ai * a == Matrix<Rational>::identity(n));

            const auto b = random_matrix(rng, n + 1, 1).column(0);
            const auto rect = random_matrix(rng, n + 1, n);
            if (const auto x = solve_linear(rect, b, exact)) {
                CHECK((rect * *x) == b);
            }
            const auto ad = a.cast<double>();
            const auto bd = to_double_vector(random_matrix(rng, n, 1).column(0));
            const auto xd = solve_linear(ad, bd, ScalarMode::approx());
            REQUIRE(xd.has_value());
            const auto res = ad * *xd;
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(res[i] - bd[i]));
            CHECK(err <= 0x1p-40 * (1.0 + norm_inf(bd)));
        }
    }

    TEST_CASE("matrix helpers") {
        const Matrix<Rational> a{{1, 2}, {3, 4}};
        CHECK(kron(Matrix<Rational>::identity(2), a).rows() == 4);
        CHECK(block_diag({a, Matrix<Rational>(1, 0)}).rows() == 3);
        CHECK(block_diag({a, Matrix<Rational>(1, 0)}).cols() == 2);
        CHECK(vstack(a, a).rows() == 4);
        CHECK(to_string(a) == "[1 2; 3 4]");
        CHECK_THROWS_AS(Matrix<Rational>(2, 2, {1, 2, 3}), DimensionMismatch);
        CHECK_THROWS_AS(a * Matrix<Rational>(3, 1), DimensionMismatch);
    }
}
