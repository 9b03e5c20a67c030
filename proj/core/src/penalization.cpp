#include "drbsde/penalization.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "drbsde/errors.hpp"
#include "drbsde/parallel.hpp"

namespace drbsde {

namespace {

bool penalizes_lower(PenaltyKind kind) {
    return kind == PenaltyKind::penalize_lower_reflect_upper ||
           kind == PenaltyKind::penalize_both;
}
bool penalizes_upper(PenaltyKind kind) {
    return kind == PenaltyKind::penalize_upper_reflect_lower ||
           kind == PenaltyKind::penalize_both;
}

BoundStats compute_bound_stats(const SolutionQuadruple& sol, const GeneratorSpec& base,
                               const Lattice& lattice, double p) {
    BoundStats s;
    const std::size_t n = lattice.steps();
    double g_int = 0.0, z_int = 0.0;
    std::vector<double> w{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double t_eval = step_eval_time(lattice, i);
        double eg = 0.0, ez = 0.0;
        for (std::size_t k = 0; k <= i; ++k) {
            const double zv = sol.z.at(i, k);
            eg += w[k] * std::abs(base.eval(t_eval, lattice.value(i, k), sol.y.at(i, k), zv));
            ez += w[k] * zv * zv;
        }
        g_int += eg * lattice.dt();
        z_int += ez * lattice.dt();
        std::vector<double> next(i + 2, 0.0);
        for (std::size_t k = 0; k <= i; ++k) {
            next[k] += 0.5 * w[k];
            next[k + 1] += 0.5 * w[k];
        }
        w = std::move(next);
    }
    s.y_sup_p = std::pow(sol.diag.lp_y, p);
    s.z_sq_p = std::pow(z_int, 0.5 * p);
    s.k_total_p = std::pow(sol.diag.mean_k_total, p);
    s.a_total_p = std::pow(sol.diag.mean_a_total, p);
    s.g_int_p = std::pow(g_int, p);
    return s;
}

void validate_schedule(const std::vector<double>& schedule) {
    if (schedule.size() < 2)
        throw InvalidArgumentError("penalty schedule must have at least 2 entries");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 0.0)
            throw InvalidArgumentError("penalty schedule entries must be nonnegative");
        if (i > 0 && !(schedule[i] > schedule[i - 1]))
            throw InvalidArgumentError("penalty schedule must be strictly increasing");
    }
}

using NodeField = const LatticeProcess&;

/// Records defects of value_a <= value_b + slack over interior nodes.
void check_nodewise_le(OrderingCheck& check, NodeField a, NodeField b, double n_label) {
    for (std::size_t i = 0; i < a.values.size() && i < b.values.size(); ++i) {
        for (std::size_t k = 0; k < a.values[i].size(); ++k) {
            ++check.checked;
            const double defect = a.values[i][k] - b.values[i][k];
            if (defect > kOrderingSlack) {
                ++check.violations;
                if (defect > check.worst_defect) {
                    check.worst_defect = defect;
                    check.worst_node = NodeRef{i, k};
                    check.worst_n = n_label;
                }
            }
        }
    }
}

}  // namespace

SolutionQuadruple solve_penalized(const ProblemData& problem, const Lattice& lattice,
                                  const GeneratorSpec& generator, const PenaltyScheme& scheme) {
    if (scheme.n < 0.0) throw InvalidArgumentError("penalty strength must be nonnegative");
    const EvaluatedData data = evaluate_data(problem, lattice);  // feasibility of the original

    const bool pen_low = penalizes_lower(scheme.kind) && problem.lower.has_value();
    const bool pen_up = penalizes_upper(scheme.kind) && problem.upper.has_value();

    ProblemData relaxed = problem;
    if (penalizes_lower(scheme.kind)) relaxed.lower.reset();
    if (penalizes_upper(scheme.kind)) relaxed.upper.reset();

    const double n = scheme.n;
    GeneratorSpec effective = generator;
    effective.name = generator.name + "+penalty";
    const SpaceTimeFn lower_fn = pen_low ? *problem.lower : SpaceTimeFn{};
    const SpaceTimeFn upper_fn = pen_up ? *problem.upper : SpaceTimeFn{};
    const GeneratorFn base = generator.eval;
    effective.eval = [base, lower_fn, upper_fn, n, pen_low, pen_up](double t, double b, double y,
                                                                    double z) {
        double g = base(t, b, y, z);
        if (pen_low) g += n * std::max(lower_fn(t, b) - y, 0.0);
        if (pen_up) g -= n * std::max(y - upper_fn(t, b), 0.0);
        return g;
    };

    SolutionQuadruple sol = solve_dp(relaxed, lattice, effective, SolverOptions{});

    // Penalty-derived increments at the solved value; hard-reflection
    // increments from solve_dp stay on the reflected side.
    const double dt = lattice.dt();
    for (std::size_t i = 0; i < lattice.steps(); ++i) {
        const double t_eval = step_eval_time(lattice, i);
        for (std::size_t k = 0; k <= i; ++k) {
            const double y = sol.y.at(i, k);
            const double b = lattice.value(i, k);
            if (pen_low) sol.dk.at(i, k) = n * std::max(lower_fn(t_eval, b) - y, 0.0) * dt;
            if (pen_up) sol.da.at(i, k) = n * std::max(y - upper_fn(t_eval, b), 0.0) * dt;
        }
    }
    refresh_diagnostics(sol, data, lattice, problem.exponent);
    return sol;
}

std::vector<double> default_penalty_schedule(double max_n) {
    std::vector<double> schedule;
    for (double n = 1.0; n <= max_n; n *= 2.0) schedule.push_back(n);
    return schedule;
}

PenalizationReport run_penalization(const ProblemData& problem, const Lattice& lattice,
                                    const GeneratorSpec& generator, PenaltyKind kind,
                                    const std::vector<double>& schedule, double tol) {
    validate_schedule(schedule);

    PenalizationReport report;
    report.kind = kind;
    report.tol = tol;
    report.entries.resize(schedule.size());

    parallel_for(schedule.size(), [&](std::size_t idx) {
        PenalizedEntry entry;
        entry.n = schedule[idx];
        entry.solution =
            solve_penalized(problem, lattice, generator, PenaltyScheme{kind, schedule[idx]});
        entry.stats = compute_bound_stats(entry.solution, generator, lattice, problem.exponent);
        report.entries[idx] = std::move(entry);
    });

    // Truncate at the first below-tol consecutive gap.
    std::size_t keep = report.entries.size();
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        const double gap = report.entries[i].solution.sup_gap(report.entries[i - 1].solution);
        report.gaps.push_back(gap);
        if (gap < tol) {
            keep = i + 1;
            report.converged = true;
            break;
        }
    }
    report.entries.resize(keep);
    report.gaps.resize(keep - 1);

    // Scheme-specific orderings (Y and one increment family monotone in n).
    OrderingCheck y_check, inc_check;
    for (std::size_t i = 1; i < report.entries.size(); ++i) {
        const auto& prev = report.entries[i - 1].solution;
        const auto& cur = report.entries[i].solution;
        const double n_label = report.entries[i].n;
        if (kind == PenaltyKind::penalize_lower_reflect_upper) {
            check_nodewise_le(y_check, prev.y, cur.y, n_label);       // Y nondecreasing
            check_nodewise_le(inc_check, prev.da, cur.da, n_label);   // dA nondecreasing
        } else if (kind == PenaltyKind::penalize_upper_reflect_lower) {
            check_nodewise_le(y_check, cur.y, prev.y, n_label);       // Y nonincreasing
            check_nodewise_le(inc_check, prev.dk, cur.dk, n_label);   // dK nondecreasing
        }
    }
    if (!y_check.clean())
        throw MonotonicityViolationError(
            "penalization: Y not monotone in n (solver bug or dt too coarse)",
            y_check.worst_node, y_check.worst_defect);
    if (!inc_check.clean())
        throw MonotonicityViolationError(
            "penalization: reflection increments not monotone in n",
            inc_check.worst_node, inc_check.worst_defect);

    return report;
}

AgreementReport three_scheme_agreement(const ProblemData& problem, const Lattice& lattice,
                                       const GeneratorSpec& generator, double tol,
                                       const std::vector<double>& schedule) {
    if (!problem.lower || !problem.upper)
        throw InvalidArgumentError("three_scheme_agreement requires both barriers");
    validate_schedule(schedule);

    AgreementReport report;
    report.schedule = schedule;
    report.lower_pen.resize(schedule.size());
    report.upper_pen.resize(schedule.size());
    report.both_pen.resize(schedule.size());

    const PenaltyKind kinds[3] = {PenaltyKind::penalize_lower_reflect_upper,
                                  PenaltyKind::penalize_upper_reflect_lower,
                                  PenaltyKind::penalize_both};
    parallel_for(3 * schedule.size(), [&](std::size_t flat) {
        const std::size_t which = flat / schedule.size();
        const std::size_t idx = flat % schedule.size();
        PenalizedEntry entry;
        entry.n = schedule[idx];
        entry.solution =
            solve_penalized(problem, lattice, generator, PenaltyScheme{kinds[which], schedule[idx]});
        entry.stats = compute_bound_stats(entry.solution, generator, lattice, problem.exponent);
        auto& dest = which == 0 ? report.lower_pen : (which == 1 ? report.upper_pen : report.both_pen);
        dest[idx] = std::move(entry);
    });

    for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
        const double n_label = schedule[idx];
        const auto& low = report.lower_pen[idx].solution;
        const auto& up = report.upper_pen[idx].solution;
        const auto& both = report.both_pen[idx].solution;
        check_nodewise_le(report.sandwich, low.y, both.y, n_label);
        check_nodewise_le(report.sandwich, both.y, up.y, n_label);
        check_nodewise_le(report.dk_hard_le_both, up.dk, both.dk, n_label);
        check_nodewise_le(report.dk_both_le_lower, both.dk, low.dk, n_label);
        check_nodewise_le(report.da_hard_le_both, low.da, both.da, n_label);
        check_nodewise_le(report.da_both_le_upper, both.da, up.da, n_label);
        if (idx > 0) {
            check_nodewise_le(report.y_mono_lower, report.lower_pen[idx - 1].solution.y, low.y,
                              n_label);
            check_nodewise_le(report.y_mono_upper, up.y, report.upper_pen[idx - 1].solution.y,
                              n_label);
        }
    }

    if (!report.sandwich.clean())
        throw SandwichViolationError("three-scheme sandwich Y_(i) <= Y_(iii) <= Y_(ii) violated",
                                     report.sandwich.worst_node, report.sandwich.worst_defect);

    const auto& y1 = report.lower_pen.back().solution;
    const auto& y2 = report.upper_pen.back().solution;
    const auto& y3 = report.both_pen.back().solution;
    report.max_limit_gap = std::max({y1.sup_gap(y2), y1.sup_gap(y3), y2.sup_gap(y3)});
    if (report.max_limit_gap > tol)
        throw LimitDisagreementError("penalization limits disagree beyond tolerance",
                                     report.max_limit_gap);
    return report;
}

}  // namespace drbsde
