#pragma once

#include <cstdint>
#include <string>

#include "drbsde/generator.hpp"
#include "drbsde/problem.hpp"

namespace drbsde {

/// Seeded random feasible instance: barriers L = a - c*cosh(s*b),
/// U = L + gap (gap >= 0.1), terminal data clipped into [L_T, U_T], mild
/// piecewise-linear forcing, and a generator a*y + b*z + c0 with slopes
/// small enough that every ordering assertion is numerically meaningful
/// at desk scale. Seeds are fixed by callers for reproducibility.
struct RandomInstance {
    ProblemData problem;
    GeneratorSpec generator;
    std::string label;
};

RandomInstance make_random_instance(std::uint64_t seed, bool two_barrier = true);

/// Ordered pair sharing one lattice: xi1 <= xi2, dV1 <= dV2, L1 <= L2,
/// U1 <= U2 and g1 <= g2 pointwise. With equal_barriers the barrier
/// functions are shared object-for-object, enabling the increment checks.
struct OrderedPair {
    RandomInstance first;
    RandomInstance second;
    bool equal_barriers = true;
};

OrderedPair make_ordered_pair(std::uint64_t seed, bool equal_barriers);

}  // namespace drbsde
