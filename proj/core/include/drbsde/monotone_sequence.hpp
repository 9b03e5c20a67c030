#pragma once

#include <vector>

#include "drbsde/penalization.hpp"

namespace drbsde {

enum class MonotoneDirection { up, down };

struct MonotoneEntry {
    double n = 0.0;
    SolutionQuadruple solution;
};

struct MonotoneReport {
    MonotoneDirection direction = MonotoneDirection::up;
    std::vector<MonotoneEntry> entries;
    std::vector<double> gaps;
    bool converged = false;

    const SolutionQuadruple& limit() const { return entries.back().solution; }
    double final_n() const { return entries.back().n; }
};

/// Solves solve_dp for each member of a monotone generator sequence and
/// asserts the ordering structure node-wise (1e-10 slack): direction up
/// means Y and dA nondecreasing in n with dK nonincreasing, direction down
/// the reverse. Node equations use the lowest (up) / highest (down) root,
/// consistent with minimal / maximal solution limits. Stops early once the
/// consecutive sup-norm gap drops below tol; otherwise reports the full
/// sequence with converged = false.
/// `labels` names the entries (penalty strengths); it must match
/// members.size(). Throws MonotonicityViolationError with a node witness.
MonotoneReport solve_monotone_sequence(const ProblemData& problem, const Lattice& lattice,
                                       const std::vector<GeneratorSpec>& members,
                                       MonotoneDirection direction,
                                       const std::vector<double>& labels, double tol);

}  // namespace drbsde
