#include "drbsde/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "drbsde/errors.hpp"

namespace drbsde {

namespace {

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

struct WorstDefect {
    double defect = 0.0;
    NodeRef node;
    void update(double d, std::size_t level, std::size_t k) {
        if (d > defect) {
            defect = d;
            node = NodeRef{level, k};
        }
    }
};

}  // namespace

SolvedInstance solve_instance(ProblemData problem, GeneratorSpec generator,
                              const Lattice& lattice) {
    SolvedInstance inst{std::move(problem), std::move(generator), {}};
    inst.solution = solve_dp(inst.problem, lattice, inst.generator);
    return inst;
}

ComparisonVerdict comparison_harness(const SolvedInstance& first, const SolvedInstance& second,
                                     const Lattice& lattice, double tol) {
    const EvaluatedData d1 = evaluate_data(first.problem, lattice);
    const EvaluatedData d2 = evaluate_data(second.problem, lattice);

    ComparisonVerdict verdict;

    // Spot-sample the claimed input orderings before judging the theorem.
    for (std::size_t k = 0; k < d1.terminal.size(); ++k)
        if (d1.terminal[k] > d2.terminal[k] + 1e-15)
            throw ComparisonSetupError("comparison setup: terminal data not ordered");
    verdict.xi_ordered = true;
    for (std::size_t i = 0; i < lattice.steps(); ++i)
        if (d1.dv(i) > d2.dv(i) + 1e-15)
            throw ComparisonSetupError("comparison setup: forcing increments not ordered");
    verdict.dv_ordered = true;
    bool barriers_equal = true;
    for (std::size_t i = 0; i < lattice.levels(); ++i) {
        for (std::size_t k = 0; k <= i; ++k) {
            const double l1 = d1.lower.at(i, k), l2 = d2.lower.at(i, k);
            const double u1 = d1.upper.at(i, k), u2 = d2.upper.at(i, k);
            if (l1 > l2 + 1e-15 || u1 > u2 + 1e-15)
                throw ComparisonSetupError("comparison setup: barriers not ordered");
            if (l1 != l2 || u1 != u2) barriers_equal = false;
        }
    }
    verdict.barriers_ordered = true;

    std::mt19937_64 rng(0x5eedULL);
    for (int s = 0; s < 64; ++s) {
        const double t = uniform_in(rng, 0.0, lattice.grid().horizon);
        const double b = uniform_in(rng, -3.0, 3.0);
        const double y = uniform_in(rng, -3.0, 3.0);
        const double z = uniform_in(rng, -3.0, 3.0);
        if (first.generator.eval(t, b, y, z) > second.generator.eval(t, b, y, z) + 1e-12)
            throw ComparisonSetupError("comparison setup: generators not ordered");
    }
    verdict.g_ordered = true;

    WorstDefect y_worst, dk_worst, da_worst;
    const auto& s1 = first.solution;
    const auto& s2 = second.solution;
    for (std::size_t i = 0; i < lattice.levels(); ++i)
        for (std::size_t k = 0; k <= i; ++k)
            y_worst.update(s1.y.at(i, k) - s2.y.at(i, k), i, k);
    verdict.worst_y_defect = y_worst.defect;
    verdict.y_node = y_worst.node;
    verdict.y_ordered = y_worst.defect <= tol;

    if (barriers_equal) {
        verdict.increments_checked = true;
        for (std::size_t i = 0; i < lattice.steps(); ++i) {
            for (std::size_t k = 0; k <= i; ++k) {
                dk_worst.update(s2.dk.at(i, k) - s1.dk.at(i, k), i, k);  // want dK1 >= dK2
                da_worst.update(s1.da.at(i, k) - s2.da.at(i, k), i, k);  // want dA1 <= dA2
            }
        }
        verdict.worst_dk_defect = dk_worst.defect;
        verdict.dk_node = dk_worst.node;
        verdict.dk_ordered = dk_worst.defect <= tol;
        verdict.worst_da_defect = da_worst.defect;
        verdict.da_node = da_worst.node;
        verdict.da_ordered = da_worst.defect <= tol;
    }
    return verdict;
}

UniquenessReport uniqueness_probe(const ProblemData& problem, const Lattice& lattice,
                                  const GeneratorSpec& generator, double tol, double n_max) {
    UniquenessReport report;
    report.grid_steps = lattice.steps();
    report.n_max = n_max;

    std::vector<std::pair<std::string, SolutionQuadruple>> routes;
    routes.emplace_back("oracle_dp", solve_dp(problem, lattice, generator));
    routes.emplace_back("penalize_both",
                        solve_penalized(problem, lattice, generator,
                                        PenaltyScheme{PenaltyKind::penalize_both, n_max}));
    if (problem.lower)
        routes.emplace_back(
            "penalize_lower_reflect_upper",
            solve_penalized(problem, lattice, generator,
                            PenaltyScheme{PenaltyKind::penalize_lower_reflect_upper, n_max}));
    if (problem.upper)
        routes.emplace_back(
            "penalize_upper_reflect_lower",
            solve_penalized(problem, lattice, generator,
                            PenaltyScheme{PenaltyKind::penalize_upper_reflect_lower, n_max}));

    for (std::size_t a = 0; a < routes.size(); ++a) {
        for (std::size_t b = a + 1; b < routes.size(); ++b) {
            const double gap = routes[a].second.sup_gap(routes[b].second);
            report.route_gaps.emplace_back(routes[a].first + " vs " + routes[b].first, gap);
            report.max_gap = std::max(report.max_gap, gap);
        }
    }
    if (report.max_gap > tol)
        throw UniquenessViolationError(
            "solution routes disagree beyond tolerance (N=" + std::to_string(lattice.steps()) +
                ", n_max=" + std::to_string(n_max) + ")",
            report.max_gap);
    return report;
}

SkorokhodResiduals skorokhod_report(const SolutionQuadruple& solution, const EvaluatedData& data,
                                    const Lattice& lattice) {
    SkorokhodResiduals r;
    std::vector<double> w{1.0};
    for (std::size_t i = 0; i < lattice.steps(); ++i) {
        for (std::size_t k = 0; k <= i; ++k) {
            const double dk = solution.dk.at(i, k);
            const double da = solution.da.at(i, k);
            if (dk != 0.0) r.r_k += w[k] * (solution.y.at(i, k) - data.lower.at(i, k)) * dk;
            if (da != 0.0) r.r_a += w[k] * (data.upper.at(i, k) - solution.y.at(i, k)) * da;
            r.r_s += w[k] * std::min(dk, da);
        }
        std::vector<double> next(i + 2, 0.0);
        for (std::size_t k = 0; k <= i; ++k) {
            next[k] += 0.5 * w[k];
            next[k + 1] += 0.5 * w[k];
        }
        w = std::move(next);
    }
    return r;
}

StudyTable convergence_study(const ProblemData& problem, const GeneratorSpec& generator,
                             const std::vector<std::size_t>& grid_schedule,
                             const std::vector<double>& penalty_schedule, double horizon) {
    if (grid_schedule.empty() || penalty_schedule.empty())
        throw InvalidArgumentError("convergence_study: schedules must be nonempty");

    StudyTable table;
    for (std::size_t steps : grid_schedule) {
        const Lattice lattice(build_time_grid(horizon, steps));
        const SolutionQuadruple oracle = solve_dp(problem, lattice, generator);
        for (double n : penalty_schedule) {
            const SolutionQuadruple pen =
                solve_penalized(problem, lattice, generator,
                                PenaltyScheme{PenaltyKind::penalize_both, n});
            table.cells.push_back(StudyCell{steps, n, pen.sup_gap(oracle)});
        }
    }
    return table;
}

}  // namespace drbsde
