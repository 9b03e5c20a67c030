#pragma once

#include <optional>

#include "drbsde/errors.hpp"
#include "drbsde/oracle.hpp"

namespace drbsde {

struct MokobodzkiVerdict {
    bool pass = false;                      // candidate stays inside [L, U]
    std::optional<NodeRef> band_witness;    // first node violating the band
    double band_defect = 0.0;
    double hp_statistic = 0.0;              // H^p statistic of g(., X, 0)
};

/// Discrete H^p statistic of t -> g(t, X_t, 0): probability-weighted time
/// integral of |g| along the given node values, raised to the exponent.
/// Level weights are exact binomial doubles, so deterministic integrands
/// give exact values ((|c| T)^p for g = c).
double hp_statistic(const GeneratorSpec& generator, const Lattice& lattice,
                    const LatticeProcess& along, double exponent);

/// Barrier-band membership L <= X <= U for a candidate process plus its
/// H^p statistic. The same statistic evaluated along a solved Y is the
/// necessity diagnostic: finite for every solvable instance.
MokobodzkiVerdict mokobodzki_check(const ProblemData& problem, const Lattice& lattice,
                                   const GeneratorSpec& generator,
                                   const SpaceTimeFn& candidate);

}  // namespace drbsde
