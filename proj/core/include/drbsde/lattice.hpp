#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "drbsde/time_grid.hpp"

namespace drbsde {

/// Recombining binomial lattice for a 1-d Brownian driver. Level i holds
/// i+1 nodes; node (i,k) carries Brownian value j*sqrt(dt) with j = 2k - i.
/// Children of (i,k) are (i+1, k+1) (up) and (i+1, k) (down), probability
/// 1/2 each, so the one-step conditional expectation of the node value is
/// the parent value.
class Lattice {
public:
    explicit Lattice(TimeGrid grid)
        : grid_(std::move(grid)), sqrt_dt_(std::sqrt(grid_.dt())) {}

    const TimeGrid& grid() const { return grid_; }
    std::size_t steps() const { return grid_.steps; }
    std::size_t levels() const { return grid_.steps + 1; }
    std::size_t level_size(std::size_t level) const { return level + 1; }

    double dt() const { return grid_.dt(); }
    double sqrt_dt() const { return sqrt_dt_; }
    double time_at(std::size_t level) const { return grid_.knots[level]; }

    /// Signed up-down count j = 2k - i.
    long long j_index(std::size_t level, std::size_t node) const {
        return 2 * static_cast<long long>(node) - static_cast<long long>(level);
    }
    /// Brownian value at (level, node).
    double value(std::size_t level, std::size_t node) const {
        return static_cast<double>(j_index(level, node)) * sqrt_dt_;
    }

    /// Node probabilities C(i,k)/2^i for one level, computed by the halved
    /// Pascal recursion. Exact doubles while C(i,k) fits a 53-bit mantissa
    /// (levels up to ~52).
    std::vector<double> level_weights(std::size_t level) const;

private:
    TimeGrid grid_;
    double sqrt_dt_;
};

Lattice build_lattice(const TimeGrid& grid);

enum class ProcessKind { state, increment };

/// Per-node values over lattice levels. State processes live on levels
/// 0..N, increment processes on 0..N-1; increments attached to K, A, V+
/// and V- are nonnegative per step.
struct LatticeProcess {
    ProcessKind kind = ProcessKind::state;
    std::vector<std::vector<double>> values;  // values[i].size() == i+1

    static LatticeProcess states(const Lattice& lattice, double fill = 0.0);
    static LatticeProcess increments(const Lattice& lattice, double fill = 0.0);

    double& at(std::size_t level, std::size_t node) { return values[level][node]; }
    double at(std::size_t level, std::size_t node) const { return values[level][node]; }
    std::size_t levels() const { return values.size(); }
};

}  // namespace drbsde
