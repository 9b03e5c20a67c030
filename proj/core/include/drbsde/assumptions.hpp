#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drbsde/generator.hpp"

namespace drbsde {

/// Sampling ranges for the assumption falsifier.
struct SampleBox {
    double t_min = 0.0, t_max = 1.0;
    double b_min = -1.0, b_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    double z_min = -1.0, z_max = 1.0;
};

struct AssumptionWitness {
    double t = 0.0, b = 0.0;
    double y1 = 0.0, y2 = 0.0;
    double z1 = 0.0, z2 = 0.0;
    double defect = 0.0;
};

enum class AssumptionVerdict { no_violation_found, violated };

struct AssumptionResult {
    std::string name;
    AssumptionVerdict verdict = AssumptionVerdict::no_violation_found;
    std::size_t samples = 0;
    std::optional<AssumptionWitness> witness;
};

struct AssumptionReport {
    std::vector<AssumptionResult> results;
    const AssumptionResult* find(const std::string& name) const;
    bool any_violation() const;
};

/// Monte-Carlo falsification of the declared regularity metadata: one-sided
/// Osgood control, z-uniform continuity, z-increment growth, signed and
/// full linear growth, one-sided continuity matching the regularity tag.
/// Only inequalities whose moduli/constants the metadata supplies are
/// sampled. One-sided by construction: it can refute, never prove.
/// Witness defects above 1e-9 reproduce on re-evaluation of the stored
/// tuple. Sampling is sharded deterministically (16 substreams), so the
/// report does not depend on the thread budget.
AssumptionReport check_assumptions(const GeneratorSpec& generator, const SampleBox& box,
                                   std::size_t samples, std::uint64_t seed);

constexpr double kAssumptionTol = 1e-9;

}  // namespace drbsde
