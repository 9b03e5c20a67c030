#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "drbsde/builtins.hpp"
#include "drbsde/errors.hpp"
#include "drbsde/instances.hpp"
#include "drbsde/verification.hpp"

using namespace drbsde;

namespace {

ProblemData band_problem(double lo, double hi, double xi) {
    ProblemData p;
    p.terminal = [xi](double) { return xi; };
    p.lower = [lo](double, double) { return lo; };
    p.upper = [hi](double, double) { return hi; };
    return p;
}

}  // namespace

TEST_CASE("comparison: identical instances have zero defects") {
    const Lattice lattice(build_time_grid(1.0, 20));
    const SolvedInstance inst =
        solve_instance(band_problem(-1.0, 1.0, 0.0), builtin("zero"), lattice);
    const ComparisonVerdict verdict = comparison_harness(inst, inst, lattice, 1e-9);
    CHECK(verdict.y_ordered);
    CHECK(verdict.worst_y_defect <= 0.0);
    CHECK(verdict.increments_checked);
    CHECK(verdict.dk_ordered);
    CHECK(verdict.da_ordered);
}

TEST_CASE("comparison: ordered drives order the solutions and increments") {
    const Lattice lattice(build_time_grid(1.0, 40));
    const ProblemData problem = band_problem(-2.0, 2.0, 0.0);
    const SolvedInstance small = solve_instance(problem, builtin("zero"), lattice);
    const SolvedInstance large = solve_instance(problem, builtin("constant(1)"), lattice);

    const ComparisonVerdict verdict = comparison_harness(small, large, lattice, 1e-9);
    CHECK(verdict.y_ordered);
    CHECK(verdict.increments_checked);
    CHECK(verdict.dk_ordered);
    CHECK(verdict.da_ordered);
}

TEST_CASE("comparison: ordered terminal data without barriers") {
    const Lattice lattice(build_time_grid(1.0, 16));
    ProblemData low, high;
    low.terminal = [](double) { return -1.0; };
    high.terminal = [](double) { return 1.0; };
    const SolvedInstance a = solve_instance(low, builtin("zero"), lattice);
    const SolvedInstance b = solve_instance(high, builtin("zero"), lattice);
    const ComparisonVerdict verdict = comparison_harness(a, b, lattice, 1e-9);
    CHECK(verdict.y_ordered);
    CHECK_FALSE(verdict.increments_checked);  // barriers absent on both sides: equal = both infinite
}

TEST_CASE("comparison harness rejects reversed inputs") {
    const Lattice lattice(build_time_grid(1.0, 16));
    const ProblemData problem = band_problem(-2.0, 2.0, 0.0);
    const SolvedInstance big = solve_instance(problem, builtin("constant(1)"), lattice);
    const SolvedInstance small = solve_instance(problem, builtin("zero"), lattice);
    CHECK_THROWS_AS(comparison_harness(big, small, lattice, 1e-9), ComparisonSetupError);

    ProblemData lower_terminal = problem;
    lower_terminal.terminal = [](double) { return -0.5; };
    const SolvedInstance c = solve_instance(lower_terminal, builtin("zero"), lattice);
    const SolvedInstance d = solve_instance(problem, builtin("zero"), lattice);
    CHECK_THROWS_AS(comparison_harness(d, c, lattice, 1e-9), ComparisonSetupError);
}

TEST_CASE("comparison: seeded ordered pairs hold with tight tolerance") {
    const Lattice lattice(build_time_grid(1.0, 30));
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const bool equal_barriers = seed % 2 == 0;
        OrderedPair pair = make_ordered_pair(seed, equal_barriers);
        const SolvedInstance first =
            solve_instance(pair.first.problem, pair.first.generator, lattice);
        const SolvedInstance second =
            solve_instance(pair.second.problem, pair.second.generator, lattice);
        const ComparisonVerdict verdict = comparison_harness(first, second, lattice, 1e-9);
        CHECK(verdict.y_ordered);
        if (equal_barriers) {
            CHECK(verdict.increments_checked);
            CHECK(verdict.dk_ordered);
            CHECK(verdict.da_ordered);
        }
    }
}

TEST_CASE("one-sided Skorokhod is enough for the Y-ordering") {
    // oracle on the smaller instance against a penalized (non-Skorokhod)
    // iterate of the larger one: the penalized scheme (ii) iterate майorizes
    // its own limit, so the ordering must survive.
    const Lattice lattice(build_time_grid(1.0, 30));
    OrderedPair pair = make_ordered_pair(1234, true);
    const SolvedInstance first =
        solve_instance(pair.first.problem, pair.first.generator, lattice);
    const SolutionQuadruple pen = solve_penalized(
        pair.second.problem, lattice, pair.second.generator,
        PenaltyScheme{PenaltyKind::penalize_upper_reflect_lower, 64.0});
    for (std::size_t i = 0; i < lattice.levels(); ++i)
        for (std::size_t k = 0; k <= i; ++k)
            CHECK(first.solution.y.at(i, k) <= pen.y.at(i, k) + 1e-9);
}

TEST_CASE("uniqueness probe: interior and martingale cases have zero gap") {
    const Lattice lattice(build_time_grid(1.0, 20));
    const UniquenessReport interior =
        uniqueness_probe(band_problem(-1.0, 1.0, 0.0), lattice, builtin("zero"), 1e-12);
    CHECK(interior.max_gap == 0.0);

    ProblemData martingale;
    martingale.terminal = [](double b) { return b; };
    const UniquenessReport report =
        uniqueness_probe(martingale, lattice, builtin("zero"), 1e-10);
    CHECK(report.max_gap <= 1e-10);
}

TEST_CASE("uniqueness probe: clamp problem at N=200, n=2^14") {
    const Lattice lattice(build_time_grid(1.0, 200));
    ProblemData clamp;
    clamp.terminal = [](double) { return 0.0; };
    clamp.upper = [](double, double) { return 1.0; };
    const UniquenessReport report =
        uniqueness_probe(clamp, lattice, builtin("clamp_drive(2)"), 1e-2);
    CHECK(report.max_gap <= 1e-2);
    CHECK(report.route_gaps.size() >= 3);
}

TEST_CASE("uniqueness probe throws with an impossible tolerance") {
    const Lattice lattice(build_time_grid(1.0, 50));
    ProblemData clamp;
    clamp.terminal = [](double) { return 0.0; };
    clamp.upper = [](double, double) { return 1.0; };
    CHECK_THROWS_AS(uniqueness_probe(clamp, lattice, builtin("clamp_drive(2)"), 1e-9),
                    UniquenessViolationError);
}

TEST_CASE("skorokhod residuals: zero for the oracle, decaying in n") {
    const Lattice lattice(build_time_grid(1.0, 60));
    ProblemData problem = band_problem(-5.0, 1.0, 0.0);
    const GeneratorSpec g = builtin("clamp_drive(2)");
    const EvaluatedData data = evaluate_data(problem, lattice);

    const SolutionQuadruple oracle = solve_dp(data, lattice, g, problem.exponent);
    const SkorokhodResiduals exact = skorokhod_report(oracle, data, lattice);
    CHECK(exact.r_k == 0.0);
    CHECK(exact.r_a == 0.0);
    CHECK(exact.r_s == 0.0);

    SkorokhodResiduals prev{kPosInf, kPosInf, kPosInf};
    for (double n : default_penalty_schedule(4096.0)) {
        const SolutionQuadruple pen = solve_penalized(
            problem, lattice, g, PenaltyScheme{PenaltyKind::penalize_both, n});
        const SkorokhodResiduals res = skorokhod_report(pen, data, lattice);
        CHECK(res.r_k <= prev.r_k + 1e-10);
        CHECK(res.r_a <= prev.r_a + 1e-10);
        CHECK(res.r_s <= prev.r_s + 1e-10);
        prev = res;
    }
    CHECK(prev.r_a <= 1e-3);
}

TEST_CASE("interior problem: penalized residuals vanish for every n") {
    const Lattice lattice(build_time_grid(1.0, 30));
    const ProblemData problem = band_problem(-1.0, 1.0, 0.0);
    const EvaluatedData data = evaluate_data(problem, lattice);
    for (double n : {1.0, 256.0}) {
        const SolutionQuadruple pen = solve_penalized(
            problem, lattice, builtin("zero"), PenaltyScheme{PenaltyKind::penalize_both, n});
        const SkorokhodResiduals res = skorokhod_report(pen, data, lattice);
        CHECK(res.r_k == 0.0);
        CHECK(res.r_a == 0.0);
        CHECK(res.r_s == 0.0);
    }
}

TEST_CASE("convergence study: gap columns shrink in n") {
    ProblemData clamp;
    clamp.terminal = [](double) { return 0.0; };
    clamp.upper = [](double, double) { return 1.0; };
    const StudyTable table = convergence_study(clamp, builtin("clamp_drive(2)"), {25, 50},
                                               default_penalty_schedule(1024.0), 1.0);
    REQUIRE(table.cells.size() == 2 * 11);
    double prev = kPosInf;
    std::size_t prev_steps = 0;
    for (const StudyCell& cell : table.cells) {
        if (cell.grid_steps != prev_steps) {
            prev_steps = cell.grid_steps;
            prev = kPosInf;
        }
        CHECK(cell.gap <= prev + 1e-10);
        prev = cell.gap;
    }
}

TEST_CASE("convergence study: single-entry schedules give a 1x1 table") {
    ProblemData interior = band_problem(-1.0, 1.0, 0.0);
    const StudyTable table =
        convergence_study(interior, builtin("zero"), {10}, {4.0}, 1.0);
    REQUIRE(table.cells.size() == 1);
    CHECK(table.cells[0].gap == 0.0);
    CHECK_THROWS_AS(convergence_study(interior, builtin("zero"), {}, {4.0}, 1.0),
                    InvalidArgumentError);
}
