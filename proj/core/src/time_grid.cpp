#include "drbsde/time_grid.hpp"

#include <cmath>

#include "drbsde/errors.hpp"

namespace drbsde {

TimeGrid build_time_grid(double horizon, std::size_t steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw InvalidArgumentError("build_time_grid: horizon must be positive and finite");
    if (steps < 1)
        throw InvalidArgumentError("build_time_grid: steps must be >= 1");

    TimeGrid grid;
    grid.horizon = horizon;
    grid.steps = steps;
    grid.knots.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        grid.knots[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
    grid.knots[steps] = horizon;  // endpoint exact regardless of rounding
    return grid;
}

}  // namespace drbsde
