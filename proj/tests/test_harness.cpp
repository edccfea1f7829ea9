#include "examples.hpp"

#include "kcf/harness.hpp"
#include "kcf/kronecker.hpp"
#include "kcf/linalg.hpp"

#include <doctest.h>

#include <cmath>

using namespace kcf;
using namespace kcf::testing;

TEST_SUITE("verification_harness") {
    TEST_CASE("default grid") {
        const auto g = default_grid(2.0);
        REQUIRE(g.size() == 20);
        CHECK(g.front() == 2.0);
        CHECK(g.back() == doctest::Approx(3.0));
    }

    TEST_CASE("residual of the Example 2 solution") {
        const auto exact = ScalarMode::exact();
        const auto sol = solve_ivp(example2(), example2_consistent_y0(), Rational(0), exact);
        const std::vector<double> times{0, 0.25, 0.5, 0.75, 1.0};
        const auto r = residual_norm(example2(), sol, times);
        CHECK(r.sample_times == times);
        CHECK(r.per_sample.size() == times.size());
        CHECK(r.max_residual <= 1e-9);
        CHECK(r.max_residual == *std::max_element(r.per_sample.begin(), r.per_sample.end()));
        CHECK(r.initial_defect == 0.0);
        CHECK(r.passes(1e-9));
        CHECK_THROWS_AS(residual_norm(example2(), sol, std::vector<double>{}), std::invalid_argument);
    }

    TEST_CASE("zero solution has zero residual") {
        const auto exact = ScalarMode::exact();
        const auto sol = solve_ivp(example2(), Vector<Rational>(5, Rational(0)), Rational(0), exact);
        const auto grid = default_grid(0.0);
        const auto r = residual_norm(example2(), sol, grid);
        CHECK(r.max_residual == 0.0);
        CHECK(r.initial_defect == 0.0);
    }

    TEST_CASE("corrupted Z_p0 is detected") {
        const auto exact = ScalarMode::exact();
        auto sol = solve_ivp(example2(), example2_consistent_y0(), Rational(0), exact);
        sol.Z_p0[0] += 1;
        const auto grid = default_grid(0.0);
        const auto r = residual_norm(example2(), sol, grid);
        // The perturbed trajectory still solves the ODE; what it no longer does
        // is pass through Y0, and that is where the defect shows up.
        CHECK(r.max_scaled <= 1e-9);
        CHECK(r.initial_defect > 1e-3);
        CHECK_FALSE(r.passes(1e-9));
    }

    TEST_CASE("rk4 examples") {
        const std::vector<FiniteDivisor<Rational>> one{{1, 1}};
        const auto a = rk4_reference(one, Vector<double>{1.0}, 0.0, 1.0, 1000);
        CHECK(a.times.size() == 1001);
        CHECK(std::abs(a.final_state()[0] - std::exp(1.0)) <= 1e-9);

        const std::vector<FiniteDivisor<Rational>> two{{1, 1}, {2, 1}};
        const auto b = rk4_reference(two, Vector<double>{1.0, -2.0}, 0.0, 1.0, 1000);
        const Vector<double> exact = jordan_exp(two, 1.0) * Vector<double>{1.0, -2.0};
        CHECK(norm_inf(b.final_state() - exact) <= 1e-6 * norm_inf(exact));
        CHECK(b.final_state()[1] == doctest::Approx(-14.7781121978613).epsilon(1e-9));

        const auto z = rk4_reference(two, Vector<double>{0.0, 0.0}, 0.0, 1.0, 10);
        for (const auto& s : z.states) CHECK(norm_inf(s) == 0.0);

        CHECK_THROWS_AS(rk4_reference(one, Vector<double>{1.0}, 0.0, 1.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(rk4_reference(two, Vector<double>{1.0}, 0.0, 1.0, 10), DimensionMismatch);
    }

    TEST_CASE("rk4 agrees with jordan_exp") {
        for (int a = -3; a <= 3; ++a)
            for (std::size_t k = 1; k <= 3; ++k) {
                const std::vector<FiniteDivisor<Rational>> block{{a, k}};
                Vector<double> z0(k);
                for (std::size_t i = 0; i < k; ++i) z0[i] = 1.0 + static_cast<double>(i);
                const auto traj = rk4_reference(block, z0, 0.0, 1.0, 1000);
                for (std::size_t i = 0; i < traj.times.size(); i += 100) {
                    const Vector<double> expected = jordan_exp(block, traj.times[i]) * z0;
                    CHECK(norm_inf(traj.states[i] - expected) <= 1e-6 * norm_inf(expected));
                }
            }
    }

    TEST_CASE("random_structured_pencil examples") {
        const auto exact = ScalarMode::exact();
        KroneckerStructure<Rational> ex1;
        ex1.fed = {{1, 1}, {2, 1}};
        ex1.cmi = {0, 2};
        ex1.rmi = {0, 1};
        const auto c1 = random_structured_pencil(ex1, 1);
        CHECK(c1.pencil.rows() == 7);
        CHECK(c1.pencil.cols() == 7);
        CHECK(reduce(c1.pencil, exact).structure == ex1.canonical());
        CHECK(c1.row_transform * c1.row_inverse == Matrix<Rational>::identity(7));
        CHECK(c1.col_transform * c1.col_inverse == Matrix<Rational>::identity(7));
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j) {
                CHECK(c1.pencil.F()(i, j).get_den() == 1);
                CHECK(c1.pencil.G()(i, j).get_den() == 1);
            }
        // Deterministic per seed.
        CHECK(random_structured_pencil(ex1, 1).pencil == c1.pencil);

        KroneckerStructure<Rational> single;
        single.fed = {{3, 1}};
        const auto c2 = random_structured_pencil(single, 0);
        CHECK(c2.pencil.rows() == 1);
        CHECK(c2.pencil.cols() == 1);
        const auto det = det_polynomial(c2.pencil, exact);
        REQUIRE(det.degree() == 1);
        CHECK(det.coefficients[0] / det.coefficients[1] == -3);

        KroneckerStructure<Rational> eps;
        eps.cmi = {1};
        const auto c3 = random_structured_pencil(eps, 2);
        CHECK(c3.pencil.rows() == 1);
        CHECK(c3.pencil.cols() == 2);
        CHECK(null_space_dims(c3.pencil, exact) == NullSpaceDims{1, 0});

        KroneckerStructure<Rational> bad;
        bad.fed = {{1, 0}};
        CHECK_THROWS_AS(random_structured_pencil(bad, 0), InvalidStructure);
    }

    TEST_CASE("structure templates") {
        for (auto t : all_templates) CHECK(parse_template(to_string(t)) == t);
        CHECK_THROWS_AS(parse_template("bogus"), std::invalid_argument);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto full = random_structure(StructureTemplate::FullMix, seed);
            CHECK(full.rows() <= 12);
            CHECK(full.cols() <= 12);
            CHECK(full.g() >= 1);
            CHECK(full.h() >= 1);
            const auto reg = random_structure(StructureTemplate::RegularOnly, seed);
            CHECK(reg.ied.empty());
            CHECK(reg.cmi.empty());
            CHECK(reg.rmi.empty());
            CHECK(random_structure(StructureTemplate::NilpotentOnly, seed).fed.empty());
            CHECK(random_structure(StructureTemplate::MixedColumnIndices, seed).d() >= 1);
            CHECK(random_structure(StructureTemplate::MixedRowIndices, seed).t() >= 1);
        }
    }

    TEST_CASE("residual of unique solutions on random pencils") {
        const auto exact = ScalarMode::exact();
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto c = random_structured_pencil(random_structure(StructureTemplate::MixedRowIndices, seed), seed);
            Vector<Rational> zc(c.pencil.cols(), Rational(0));
            for (std::size_t i = 0; i < c.truth.p(); ++i) zc[i] = static_cast<int>(i % 3) - 1;
            const auto sol = solve_ivp(c.pencil, c.col_inverse * zc, Rational(0), exact);
            REQUIRE(sol.kind == SolutionKind::Unique);
            const auto grid = default_grid(0.0);
            CHECK(residual_norm(c.pencil, sol, grid).passes(1e-9));
        }
    }
}
