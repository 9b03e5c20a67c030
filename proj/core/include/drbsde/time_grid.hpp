#pragma once

#include <cstddef>
#include <vector>

namespace drbsde {

/// Uniform time grid on [0, horizon] with `steps` intervals.
struct TimeGrid {
    double horizon = 0.0;
    std::size_t steps = 0;
    std::vector<double> knots;  // knots[0] = 0, knots[steps] = horizon

    double dt() const { return horizon / static_cast<double>(steps); }
};

/// Throws InvalidArgumentError unless horizon > 0 and steps >= 1.
TimeGrid build_time_grid(double horizon, std::size_t steps);

}  // namespace drbsde
