#include <random>

#include "doctest.h"
#include "plfilter/errors.hpp"
#include "plfilter/expression.hpp"
#include "plfilter/model.hpp"

using namespace plf;

namespace {

ConstraintSet lp2d_constraints() {
    ConstraintSet cs;
    cs.rows = {{{3.0, 6.0}, -48.0},
               {{4.0, 2.0}, -32.0},
               {{1.0, 1.0}, -10.0},
               {{-1.0, 0.0}, 0.0},
               {{0.0, -1.0}, 0.0}};
    return cs;
}

} // namespace

TEST_CASE("linear objective evaluation") {
    const LinearObjective obj({-4.0, -3.0}, 36.0);
    CHECK(obj({6.0, 4.0}) == doctest::Approx(0.0));
    CHECK(obj({0.0, 0.0}) == doctest::Approx(36.0));
    CHECK_THROWS_AS(evaluate_objective(Objective(obj), {1.0}), Error);
}

TEST_CASE("quadratic objective evaluation and PD check") {
    Matrix eye = Matrix::identity(2);
    const QuadraticObjective q(eye, {0.0, 0.0});
    CHECK(q({0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(q({1.0, 2.0}) == doctest::Approx(2.5));

    Matrix indef = Matrix::identity(2);
    indef(1, 1) = -1.0;
    CHECK_THROWS_AS(QuadraticObjective(indef, Vec{0.0, 0.0}), Error);

    Matrix zero_eig(2, 2);
    zero_eig(0, 0) = 1.0; // second eigenvalue exactly zero
    CHECK_THROWS_AS(QuadraticObjective(zero_eig, Vec{0.0, 0.0}), Error);

    Matrix asym = Matrix::identity(2);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(QuadraticObjective(asym, Vec{0.0, 0.0}), Error);
}

TEST_CASE("quadratic minimizer and o_min") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 4.0;
    const QuadraticObjective q(a, {1.0, 0.0});
    CHECK(q.minimizer[0] == doctest::Approx(1.0));
    CHECK(q.minimizer[1] == doctest::Approx(0.0));
    CHECK(q.o_min == doctest::Approx(-0.5));
    CHECK(q(q.minimizer) == doctest::Approx(q.o_min));
}

TEST_CASE("combine_objectives matches weighted sums") {
    const Objective o1(LinearObjective({2.0, 0.0}, 0.0));
    const Objective o2(LinearObjective({0.0, 1.0}, 1.0));

    SUBCASE("unit pressure selects first") {
        const auto combo = combine_objectives({o1, o2}, PressureVector({1.0, 0.0}));
        CHECK(combo({3.0, 5.0}) == doctest::Approx(o1({3.0, 5.0})));
    }
    SUBCASE("direct sum") {
        BlackBoxObjective sq1{[](const Vec& x) { return x[0] * x[0]; }, "x^2", 1};
        BlackBoxObjective sq2{[](const Vec& x) { return (x[0] - 1.0) * (x[0] - 1.0); }, "(x-1)^2", 1};
        const auto combo = combine_objectives({Objective(sq1), Objective(sq2)}, PressureVector({1.0, 1.0}));
        CHECK(combo({0.0}) == doctest::Approx(1.0));
    }
    SUBCASE("constants scale linearly") {
        BlackBoxObjective c1{[](const Vec&) { return 1.0; }, "1", 2};
        BlackBoxObjective c2{[](const Vec&) { return 1.0; }, "1", 2};
        const auto combo = combine_objectives({Objective(c1), Objective(c2)}, PressureVector({2.0, 3.0}));
        CHECK(combo({0.0, 0.0}) == doctest::Approx(5.0));
    }
    SUBCASE("length mismatch rejected") {
        CHECK_THROWS_AS(combine_objectives({o1}, PressureVector({1.0, 1.0})), Error);
    }
    SUBCASE("linearity property on random points") {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int trial = 0; trial < 100; ++trial) {
            const Vec w{std::abs(u(rng)), std::abs(u(rng))};
            if (w[0] + w[1] == 0.0) continue;
            const auto combo = combine_objectives({o1, o2}, PressureVector(w));
            const Vec x{u(rng), u(rng)};
            const double direct = w[0] * o1(x) + w[1] * o2(x);
            CHECK(combo(x) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("indicator on the 2-d LP") {
    const ConstraintSet cs = lp2d_constraints();
    CHECK(indicator(cs, {6.0, 4.0}) == 1);
    CHECK(indicator(cs, {11.0, 0.0}) == 0);
    CHECK(indicator(ConstraintSet{}, {123.0, -4.0}) == 1);
}

TEST_CASE("indicator monotone under constraint tightening") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 12.0);
    std::uniform_real_distribution<double> tighten(0.0, 5.0);
    const ConstraintSet cs = lp2d_constraints();
    for (int trial = 0; trial < 200; ++trial) {
        const Vec x{u(rng), u(rng)};
        ConstraintSet tight = cs;
        const std::size_t j = std::size_t(rng() % tight.rows.size());
        tight.rows[j].d += tighten(rng);
        if (indicator(cs, x) == 0) CHECK(indicator(tight, x) == 0);
    }
}

TEST_CASE("box bounds participate in indicator") {
    ConstraintSet cs;
    cs.box = BoxBounds{{0.0, 0.0}, {1.0, 1.0}};
    CHECK(indicator(cs, {0.5, 0.5}) == 1);
    CHECK(indicator(cs, {1.5, 0.5}) == 0);
    CHECK(indicator(cs, {0.5, -0.2}) == 0);
}

TEST_CASE("pressure vector validation") {
    CHECK_THROWS_AS(PressureVector(Vec{}), Error);
    CHECK_THROWS_AS(PressureVector(Vec{0.0, 0.0}), Error);
    CHECK_THROWS_AS(PressureVector(Vec{-1.0, 2.0}), Error);
    CHECK_NOTHROW(PressureVector(Vec{0.0, 2.0}));
}

TEST_CASE("expression compiler") {
    const auto f = compile_expression("x1^2 + 3*x2 - sin(x1)", 2);
    CHECK(f({2.0, 1.0}) == doctest::Approx(4.0 + 3.0 - std::sin(2.0)));
    CHECK_THROWS_AS(compile_expression("x3 + 1", 2), Error);
    CHECK_THROWS_AS(compile_expression("x1 +", 1), Error);
    CHECK_THROWS_AS(compile_expression("foo(x1)", 1), Error);
    const auto g = compile_expression("pow(x1, 3) - max(x1, 0.5)", 1);
    CHECK(g({2.0}) == doctest::Approx(6.0));
    const auto h = compile_expression("-x1^2", 1);
    CHECK(h({3.0}) == doctest::Approx(-9.0));
    const auto p = compile_expression("2^3^2", 1); // right associative
    CHECK(p({0.0}) == doctest::Approx(512.0));
    const auto q = compile_expression("6/3/2", 1); // left associative
    CHECK(q({0.0}) == doctest::Approx(1.0));
}
