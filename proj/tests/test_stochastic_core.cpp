#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "drbsde/errors.hpp"
#include "drbsde/lattice.hpp"
#include "drbsde/problem.hpp"
#include "drbsde/time_grid.hpp"

using namespace drbsde;

TEST_CASE("uniform time grid") {
    const TimeGrid grid = build_time_grid(1.0, 4);
    REQUIRE(grid.knots.size() == 5);
    CHECK(grid.knots[0] == 0.0);
    CHECK(grid.knots[1] == 0.25);
    CHECK(grid.knots[2] == 0.5);
    CHECK(grid.knots[3] == 0.75);
    CHECK(grid.knots[4] == 1.0);
    CHECK(grid.dt() == 0.25);

    const TimeGrid single = build_time_grid(2.0, 1);
    CHECK(single.knots == std::vector<double>{0.0, 2.0});

    CHECK_THROWS_AS(build_time_grid(1.0, 0), InvalidArgumentError);
    CHECK_THROWS_AS(build_time_grid(0.0, 4), InvalidArgumentError);
    CHECK_THROWS_AS(build_time_grid(-1.0, 4), InvalidArgumentError);
}

TEST_CASE("grid endpoint is exact for awkward horizons") {
    const TimeGrid grid = build_time_grid(0.7, 7);
    CHECK(grid.knots.back() == 0.7);
    for (std::size_t i = 1; i < grid.knots.size(); ++i)
        CHECK(grid.knots[i] > grid.knots[i - 1]);
}

TEST_CASE("lattice levels and node values") {
    const Lattice lattice(build_time_grid(1.0, 2));
    CHECK(lattice.levels() == 3);
    for (std::size_t i = 0; i < lattice.levels(); ++i) CHECK(lattice.level_size(i) == i + 1);

    // level-2 values are {-2, 0, 2} * sqrt(0.5), i.e. {-sqrt 2, 0, sqrt 2}
    CHECK(lattice.value(2, 0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(lattice.value(2, 1) == 0.0);
    CHECK(lattice.value(2, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const Lattice one(build_time_grid(1.0, 1));
    CHECK(one.value(1, 0) == -one.sqrt_dt());
    CHECK(one.value(1, 1) == one.sqrt_dt());
}

TEST_CASE("child average equals parent value") {
    // dyadic dt makes the identity bitwise; a generic dt gets a 1-ulp bound
    const Lattice dyadic(build_time_grid(1.0, 4));  // sqrt(0.25) = 0.5 exactly
    for (std::size_t i = 0; i + 1 < dyadic.levels(); ++i)
        for (std::size_t k = 0; k <= i; ++k)
            CHECK(0.5 * (dyadic.value(i + 1, k) + dyadic.value(i + 1, k + 1)) ==
                  dyadic.value(i, k));

    const Lattice generic(build_time_grid(1.0, 7));
    for (std::size_t i = 0; i + 1 < generic.levels(); ++i)
        for (std::size_t k = 0; k <= i; ++k) {
            const double mid = 0.5 * (generic.value(i + 1, k) + generic.value(i + 1, k + 1));
            CHECK(mid == doctest::Approx(generic.value(i, k)).epsilon(1e-15));
        }
}

TEST_CASE("level weights sum to one and match binomials") {
    const Lattice lattice(build_time_grid(1.0, 10));
    const auto w = lattice.level_weights(4);
    REQUIRE(w.size() == 5);
    CHECK(w[0] == 1.0 / 16);
    CHECK(w[1] == 4.0 / 16);
    CHECK(w[2] == 6.0 / 16);
    double sum = 0.0;
    for (double x : w) sum += x;
    CHECK(sum == 1.0);
}

TEST_CASE("piecewise linear forcing and jordan split") {
    PiecewiseLinear v{{0.0, 0.5, 1.0}, {0.0, 0.3, 0.1}};
    auto [plus, minus] = jordan_split(v);
    CHECK(plus.nondecreasing());
    CHECK(minus.nondecreasing());
    CHECK(plus.v.back() == doctest::Approx(0.3));
    CHECK(minus.v.back() == doctest::Approx(0.2));
    // difference reproduces v at the knots
    for (std::size_t i = 0; i < v.t.size(); ++i)
        CHECK(plus.v[i] - minus.v[i] == doctest::Approx(v.v[i]));
}

TEST_CASE("evaluate_data: constant barriers are feasible and sampled per node") {
    const Lattice lattice(build_time_grid(1.0, 4));
    ProblemData problem;
    problem.terminal = [](double) { return 0.0; };
    problem.lower = [](double, double) { return -1.0; };
    problem.upper = [](double, double) { return 1.0; };

    const EvaluatedData data = evaluate_data(problem, lattice);
    CHECK(data.has_lower);
    CHECK(data.has_upper);
    for (std::size_t i = 0; i < lattice.levels(); ++i)
        for (std::size_t k = 0; k <= i; ++k) {
            CHECK(data.lower.at(i, k) == -1.0);
            CHECK(data.upper.at(i, k) == 1.0);
        }
    for (std::size_t k = 0; k <= 4; ++k) CHECK(data.terminal[k] == 0.0);
}

TEST_CASE("evaluate_data: terminal compatibility violation") {
    const Lattice lattice(build_time_grid(1.0, 4));
    ProblemData problem;
    problem.terminal = [](double) { return 0.0; };
    problem.lower = [](double, double) { return 0.5; };  // L_T > xi
    CHECK_THROWS_AS(evaluate_data(problem, lattice), InfeasibleProblemError);
}

TEST_CASE("evaluate_data: barrier order violation carries a witness") {
    const Lattice lattice(build_time_grid(1.0, 4));
    ProblemData problem;
    problem.terminal = [](double) { return 0.0; };
    problem.lower = [](double, double) { return 1.0; };
    problem.upper = [](double, double) { return -1.0; };
    CHECK_THROWS_AS(evaluate_data(problem, lattice), InfeasibleProblemError);
    try {
        evaluate_data(problem, lattice);
    } catch (const InfeasibleProblemError& e) {
        CHECK(std::string(e.what()).find("barriers") != std::string::npos);
    }
}

TEST_CASE("evaluate_data: linear V gives constant positive increments") {
    const Lattice lattice(build_time_grid(1.0, 4));
    ProblemData problem;
    problem.terminal = [](double) { return 0.0; };
    PiecewiseLinear v{{0.0, 1.0}, {0.0, 1.0}};  // V(t) = t
    auto [plus, minus] = jordan_split(v);
    problem.v_plus = plus;
    problem.v_minus = minus;

    const EvaluatedData data = evaluate_data(problem, lattice);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(data.dv_plus[i] == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(data.dv_minus[i] == 0.0);
    }
}

TEST_CASE("total variation of the sampled increments is exact on grid-aligned kinks") {
    const Lattice lattice(build_time_grid(1.0, 4));
    ProblemData problem;
    problem.terminal = [](double) { return 0.0; };
    PiecewiseLinear v{{0.0, 0.5, 1.0}, {0.0, 0.25, 0.0}};  // up then down, kink on a knot
    auto [plus, minus] = jordan_split(v);
    problem.v_plus = plus;
    problem.v_minus = minus;

    const EvaluatedData data = evaluate_data(problem, lattice);
    double tv = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(data.dv_plus[i] >= 0.0);
        CHECK(data.dv_minus[i] >= 0.0);
        tv += std::abs(data.dv(i));
    }
    CHECK(tv == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("problem validation rejects bad exponent and decreasing forcing") {
    ProblemData problem;
    problem.terminal = [](double) { return 0.0; };
    problem.exponent = 1.0;
    CHECK_THROWS_AS(problem.validate(), InvalidArgumentError);

    problem.exponent = 2.0;
    problem.v_plus = PiecewiseLinear{{0.0, 1.0}, {0.0, -1.0}};
    CHECK_THROWS_AS(problem.validate(), InvalidArgumentError);
}
