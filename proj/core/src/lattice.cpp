#include "drbsde/lattice.hpp"

namespace drbsde {

std::vector<double> Lattice::level_weights(std::size_t level) const {
    std::vector<double> w{1.0};
    w.reserve(level + 1);
    for (std::size_t i = 0; i < level; ++i) {
        std::vector<double> next(i + 2, 0.0);
        for (std::size_t k = 0; k <= i; ++k) {
            const double half = 0.5 * w[k];
            next[k] += half;
            next[k + 1] += half;
        }
        w = std::move(next);
    }
    return w;
}

Lattice build_lattice(const TimeGrid& grid) { return Lattice(grid); }

LatticeProcess LatticeProcess::states(const Lattice& lattice, double fill) {
    LatticeProcess p;
    p.kind = ProcessKind::state;
    p.values.resize(lattice.levels());
    for (std::size_t i = 0; i < lattice.levels(); ++i)
        p.values[i].assign(lattice.level_size(i), fill);
    return p;
}

LatticeProcess LatticeProcess::increments(const Lattice& lattice, double fill) {
    LatticeProcess p;
    p.kind = ProcessKind::increment;
    p.values.resize(lattice.steps());
    for (std::size_t i = 0; i < lattice.steps(); ++i)
        p.values[i].assign(lattice.level_size(i), fill);
    return p;
}

}  // namespace drbsde
