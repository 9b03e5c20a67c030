#pragma once

#include <string>
#include <vector>

#include "drbsde/penalization.hpp"

namespace drbsde {

/// A problem + generator + its oracle solution, as fed to the harnesses.
struct SolvedInstance {
    ProblemData problem;
    GeneratorSpec generator;
    SolutionQuadruple solution;
};

SolvedInstance solve_instance(ProblemData problem, GeneratorSpec generator,
                              const Lattice& lattice);

struct ComparisonVerdict {
    bool y_ordered = false;
    double worst_y_defect = 0.0;
    NodeRef y_node;
    bool increments_checked = false;  // only with equal barriers
    bool dk_ordered = true;           // dK1 >= dK2 per step
    double worst_dk_defect = 0.0;
    NodeRef dk_node;
    bool da_ordered = true;  // dA1 <= dA2 per step
    double worst_da_defect = 0.0;
    NodeRef da_node;
    // inputs echo: which orderings the spot-sampler confirmed
    bool xi_ordered = false, dv_ordered = false, barriers_ordered = false, g_ordered = false;
};

/// Verifies Y1 <= Y2 + tol node-wise for instances with ordered inputs
/// (xi, dV, L, U, g); with equal barriers additionally checks the per-step
/// increment orderings dK1 >= dK2 - tol and dA1 <= dA2 + tol. Inputs are
/// spot-sampled first; a reversal throws ComparisonSetupError (an invalid
/// setup, distinct from a theorem-violation verdict).
ComparisonVerdict comparison_harness(const SolvedInstance& first, const SolvedInstance& second,
                                     const Lattice& lattice, double tol);

struct UniquenessReport {
    double max_gap = 0.0;
    std::vector<std::pair<std::string, double>> route_gaps;  // route label -> gap vs oracle
    std::size_t grid_steps = 0;
    double n_max = 0.0;
};

/// Solves via backward DP and via every applicable penalization route at
/// strength n_max, returning the max pairwise sup-norm gap; a gap above tol
/// throws UniquenessViolationError (in practice: discretization too coarse).
UniquenessReport uniqueness_probe(const ProblemData& problem, const Lattice& lattice,
                                  const GeneratorSpec& generator, double tol,
                                  double n_max = 16384.0);

struct SkorokhodResiduals {
    double r_k = 0.0, r_a = 0.0, r_s = 0.0;
};

/// Probability-weighted residuals sum (Y-L)dK, sum (U-Y)dA, sum min(dK,dA).
/// Exactly zero for projection-built oracle solutions; decaying in n for
/// penalized ones.
SkorokhodResiduals skorokhod_report(const SolutionQuadruple& solution,
                                    const EvaluatedData& data, const Lattice& lattice);

struct StudyCell {
    std::size_t grid_steps = 0;
    double n = 0.0;
    double gap = 0.0;  // sup-norm gap penalized vs oracle on the same lattice
};

struct StudyTable {
    std::vector<StudyCell> cells;  // N-major, n-minor
};

/// Cross-tabulates the penalize-both vs oracle sup gap over (N, n). Raw
/// data for plotting; no rate is asserted.
StudyTable convergence_study(const ProblemData& problem, const GeneratorSpec& generator,
                             const std::vector<std::size_t>& grid_schedule,
                             const std::vector<double>& penalty_schedule, double horizon);

}  // namespace drbsde
