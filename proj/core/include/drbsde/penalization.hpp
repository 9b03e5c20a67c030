#pragma once

#include <vector>

#include "drbsde/errors.hpp"
#include "drbsde/oracle.hpp"

namespace drbsde {

/// The three penalization routes: replace one or both reflections by
/// n(y-L)^- / -n(y-U)^+ terms in the generator and keep the other barrier
/// hard. Missing barriers degrade gracefully (their penalty or reflection
/// is a no-op), covering the one-barrier and unreflected variants.
enum class PenaltyKind {
    penalize_lower_reflect_upper,  // scheme (i): K from penalty, A hard
    penalize_upper_reflect_lower,  // scheme (ii): A from penalty, K hard
    penalize_both,                 // scheme (iii): both from penalties
};

struct PenaltyScheme {
    PenaltyKind kind = PenaltyKind::penalize_both;
    double n = 0.0;  // penalty strength, >= 0
};

/// Discrete stand-ins for the quantities inside the uniform L^p bounds:
/// Snell envelope of |Y|^p, (sum_i E|Z_i|^2 dt)^{p/2}, (E K_T)^p, (E A_T)^p
/// and (sum_i E|g(.,Y,Z)| dt)^p with the base generator.
struct BoundStats {
    double y_sup_p = 0.0;
    double z_sq_p = 0.0;
    double k_total_p = 0.0;
    double a_total_p = 0.0;
    double g_int_p = 0.0;
};

/// Solves the penalized equation: solve_dp with the modified generator, the
/// penalized barrier removed, and the penalty handled inside the implicit
/// node solve (decreasing in y, so any n is stable, including n >> 1/dt).
/// K/A increments are the penalty extractions n(Y-L)^- dt / n(Y-U)^+ dt on
/// penalized sides and the hard-reflection overshoots on reflected sides;
/// diagnostics are measured against the original barriers.
SolutionQuadruple solve_penalized(const ProblemData& problem, const Lattice& lattice,
                                  const GeneratorSpec& generator, const PenaltyScheme& scheme);

struct PenalizedEntry {
    double n = 0.0;
    SolutionQuadruple solution;
    BoundStats stats;
};

struct PenalizationReport {
    PenaltyKind kind = PenaltyKind::penalize_both;
    std::vector<PenalizedEntry> entries;  // truncated at convergence
    std::vector<double> gaps;             // gaps[i] = sup |Y_{i+1} - Y_i|
    bool converged = false;
    double tol = 0.0;

    const SolutionQuadruple& final_solution() const { return entries.back().solution; }
    double final_n() const { return entries.back().n; }
};

/// Default doubling schedule 1, 2, 4, ..., max_n.
std::vector<double> default_penalty_schedule(double max_n = 16384.0);

/// Solves every schedule entry (in parallel), asserts the scheme-specific
/// orderings (scheme (i): Y and dA nondecreasing in n; scheme (ii): Y
/// nonincreasing, dK nondecreasing; 1e-10 slack), and truncates at the
/// first consecutive sup-norm gap below tol. A full schedule without a
/// below-tol gap is reported with converged = false.
/// Throws InvalidArgumentError for schedules shorter than 2 entries and
/// MonotonicityViolationError with a node witness on ordering failures.
PenalizationReport run_penalization(const ProblemData& problem, const Lattice& lattice,
                                    const GeneratorSpec& generator, PenaltyKind kind,
                                    const std::vector<double>& schedule, double tol);

/// Result of one family of per-node ordering checks.
struct OrderingCheck {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_defect = 0.0;
    NodeRef worst_node;
    double worst_n = 0.0;

    bool clean() const { return violations == 0; }
};

struct AgreementReport {
    std::vector<double> schedule;
    // per-scheme solutions aligned with the schedule
    std::vector<PenalizedEntry> lower_pen;  // scheme (i)
    std::vector<PenalizedEntry> upper_pen;  // scheme (ii)
    std::vector<PenalizedEntry> both_pen;   // scheme (iii)

    OrderingCheck y_mono_lower;   // scheme (i) Y nondecreasing in n
    OrderingCheck y_mono_upper;   // scheme (ii) Y nonincreasing in n
    OrderingCheck sandwich;       // Y_(i) <= Y_(iii) <= Y_(ii) per n
    OrderingCheck dk_hard_le_both;    // dK scheme (ii) <= dK scheme (iii)
    OrderingCheck dk_both_le_lower;   // dK scheme (iii) <= dK scheme (i)
    OrderingCheck da_hard_le_both;    // dA scheme (i) <= dA scheme (iii)
    OrderingCheck da_both_le_upper;   // dA scheme (iii) <= dA scheme (ii)

    double max_limit_gap = 0.0;  // max pairwise sup gap of the three final Y
};

/// Runs all three schemes over the same (full) schedule, asserting the
/// per-n sandwich and recording the per-step increment-domination checks;
/// throws SandwichViolationError / MonotonicityViolationError on Y-ordering
/// failures and LimitDisagreementError when the three final solutions
/// differ beyond tol. Requires both barriers present.
AgreementReport three_scheme_agreement(const ProblemData& problem, const Lattice& lattice,
                                       const GeneratorSpec& generator, double tol,
                                       const std::vector<double>& schedule);

/// Ordering slack shared by all penalization/monotonicity assertions.
constexpr double kOrderingSlack = 1e-10;

}  // namespace drbsde
