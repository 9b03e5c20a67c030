#include "drbsde/monotone_sequence.hpp"

#include <cmath>

#include "drbsde/errors.hpp"

namespace drbsde {

namespace {

void require_le(const LatticeProcess& a, const LatticeProcess& b, double n_label,
                const char* what) {
    for (std::size_t i = 0; i < a.values.size() && i < b.values.size(); ++i) {
        for (std::size_t k = 0; k < a.values[i].size(); ++k) {
            const double defect = a.values[i][k] - b.values[i][k];
            if (defect > kOrderingSlack)
                throw MonotonicityViolationError(
                    std::string("monotone sequence: ") + what + " violated at n=" +
                        std::to_string(n_label),
                    NodeRef{i, k}, defect);
        }
    }
}

}  // namespace

MonotoneReport solve_monotone_sequence(const ProblemData& problem, const Lattice& lattice,
                                       const std::vector<GeneratorSpec>& members,
                                       MonotoneDirection direction,
                                       const std::vector<double>& labels, double tol) {
    if (members.empty()) throw InvalidArgumentError("monotone sequence: no generators");
    if (labels.size() != members.size())
        throw InvalidArgumentError("monotone sequence: labels must match the generator count");

    const EvaluatedData data = evaluate_data(problem, lattice);
    SolverOptions options;
    options.root_select =
        direction == MonotoneDirection::up ? RootSelect::lowest : RootSelect::highest;

    MonotoneReport report;
    report.direction = direction;

    for (std::size_t idx = 0; idx < members.size(); ++idx) {
        MonotoneEntry entry;
        entry.n = labels[idx];
        entry.solution = solve_dp(data, lattice, members[idx], problem.exponent, options);

        if (!report.entries.empty()) {
            const auto& prev = report.entries.back().solution;
            const auto& cur = entry.solution;
            if (direction == MonotoneDirection::up) {
                require_le(prev.y, cur.y, entry.n, "Y nondecreasing");
                require_le(prev.da, cur.da, entry.n, "dA nondecreasing");
                require_le(cur.dk, prev.dk, entry.n, "dK nonincreasing");
            } else {
                require_le(cur.y, prev.y, entry.n, "Y nonincreasing");
                require_le(cur.da, prev.da, entry.n, "dA nonincreasing");
                require_le(prev.dk, cur.dk, entry.n, "dK nondecreasing");
            }
            const double gap = cur.sup_gap(prev);
            report.gaps.push_back(gap);
            report.entries.push_back(std::move(entry));
            if (gap < tol) {
                report.converged = true;
                break;
            }
        } else {
            report.entries.push_back(std::move(entry));
            if (members.size() == 1) report.converged = true;
        }
    }
    return report;
}

}  // namespace drbsde
