#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace drbsde {

/// Driver g(t, b, y, z); randomness enters through the Brownian value b.
using GeneratorFn = std::function<double(double t, double b, double y, double z)>;
/// Nondecreasing modulus on [0, inf) with value 0 at 0.
using ModulusFn = std::function<double(double x)>;
/// Nonnegative process of (t, b), e.g. the f / f~ growth envelopes.
using EnvelopeFn = std::function<double(double t, double b)>;

enum class Regularity { continuous, left_limit_lsc, right_limit_usc };

/// One-sided Osgood control in y: (g(y1,z)-g(y2,z))sgn(y1-y2) <= rho(|y1-y2|).
struct OsgoodMetadata {
    ModulusFn rho;
};

/// Uniform continuity in z: |g(y,z1)-g(y,z2)| <= phi(|z1-z2|).
struct ZModulusMetadata {
    ModulusFn phi;
};

/// Linear control of the z-increment: |g(y,z)-g(y,0)| <= f + mu|y| + lambda|z|.
struct ZGrowthMetadata {
    EnvelopeFn f;
    double mu = 0.0;
    double lambda = 0.0;
};

/// Full linear growth: |g(y,z)| <= f + mu|y| + lambda|z|.
struct FullGrowthMetadata {
    EnvelopeFn f;
    double mu = 0.0;
    double lambda = 0.0;
};

struct GeneratorSpec;

struct GeneratorDecomposition {
    std::shared_ptr<const GeneratorSpec> smooth;         // Osgood part, z-growth metadata
    std::shared_ptr<const GeneratorSpec> discontinuous;  // one-sided-continuous part, full growth
};

/// A generator together with the declared regularity metadata the solvers
/// and checkers work against. Everything beyond `eval` is declaration, not
/// derivation; check_assumptions can only falsify it.
struct GeneratorSpec {
    std::string name;
    GeneratorFn eval;

    /// Shared linear-growth constant A with rho(x) <= A(x+1), phi(x) <= A(x+1).
    double a_norm = 0.0;
    /// One-sided y-slope bound when it exceeds the Osgood scale (set by the
    /// regularized families, where it grows with the penalty constant).
    std::optional<double> y_slope_bound;
    /// Expensive evaluations (numeric infima): node solves run in parallel.
    bool heavy = false;

    Regularity regularity = Regularity::continuous;
    std::optional<OsgoodMetadata> osgood;
    std::optional<ZModulusMetadata> z_modulus;
    std::optional<ZGrowthMetadata> z_growth;
    std::optional<FullGrowthMetadata> full_growth;
    std::optional<GeneratorDecomposition> decomposition;

    double operator()(double t, double b, double y, double z) const {
        return eval(t, b, y, z);
    }
};

/// g = g1 + g2 with the decomposition recorded for infconv_regularize.
/// Growth metadata is combined additively.
GeneratorSpec sum_with_decomposition(GeneratorSpec g1, GeneratorSpec g2);

}  // namespace drbsde
