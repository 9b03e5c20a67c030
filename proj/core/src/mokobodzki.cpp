#include "drbsde/mokobodzki.hpp"

#include <cmath>

namespace drbsde {

double hp_statistic(const GeneratorSpec& generator, const Lattice& lattice,
                    const LatticeProcess& along, double exponent) {
    const std::size_t n = lattice.steps();
    std::vector<double> w{1.0};
    double level_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t_eval = step_eval_time(lattice, i);
        double level_avg = 0.0;
        for (std::size_t k = 0; k <= i; ++k)
            level_avg +=
                w[k] * std::abs(generator.eval(t_eval, lattice.value(i, k), along.at(i, k), 0.0));
        level_sum += level_avg;
        std::vector<double> next(i + 2, 0.0);
        for (std::size_t k = 0; k <= i; ++k) {
            next[k] += 0.5 * w[k];
            next[k + 1] += 0.5 * w[k];
        }
        w = std::move(next);
    }
    // (sum_i E_i) * T / N keeps constant integrands exact.
    const double integral = level_sum * lattice.grid().horizon / static_cast<double>(n);
    return std::pow(integral, exponent);
}

MokobodzkiVerdict mokobodzki_check(const ProblemData& problem, const Lattice& lattice,
                                   const GeneratorSpec& generator,
                                   const SpaceTimeFn& candidate) {
    const EvaluatedData data = evaluate_data(problem, lattice);

    LatticeProcess x = LatticeProcess::states(lattice);
    MokobodzkiVerdict verdict;
    verdict.pass = true;
    for (std::size_t i = 0; i < lattice.levels(); ++i) {
        const double t = lattice.time_at(i);
        for (std::size_t k = 0; k <= i; ++k) {
            const double v = candidate(t, lattice.value(i, k));
            x.at(i, k) = v;
            const double low_defect = data.lower.at(i, k) - v;
            const double up_defect = v - data.upper.at(i, k);
            const double defect = std::max(low_defect, up_defect);
            if (defect > 0.0 && verdict.pass) {
                verdict.pass = false;
                verdict.band_witness = NodeRef{i, k};
                verdict.band_defect = defect;
            }
        }
    }
    verdict.hp_statistic = hp_statistic(generator, lattice, x, problem.exponent);
    return verdict;
}

}  // namespace drbsde
