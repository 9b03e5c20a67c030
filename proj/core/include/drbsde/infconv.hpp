#pragma once

#include <memory>
#include <vector>

#include "drbsde/generator.hpp"

namespace drbsde {

/// Inf-convolution regularization of a decomposed generator g = g1 + g2:
///   g1_n(y,z) = inf_u  [ g1(y,u) + (n+2*lambda)|u-z| ]
///   g2_n(y,z) = inf_uv [ g2(u,v) + (n+2*mu~)|u-y| + (n+2*lambda~)|v-z| ]
/// The infima run over boxes whose radii come from the growth metadata
/// (outside them the penalty slope beats the integrand's growth slope, so
/// the minimizer is interior) and are refined by a deterministic
/// scan-and-zoom to the family's value tolerance.
///
/// A family is built over a fixed schedule of penalty strengths. Member k
/// minimizes over the union of the zoom candidates of every schedule entry
/// m >= k (plus the exact center point), which makes
///   g_n <= g_{n+1} <= g
/// hold exactly at every evaluated point, not merely up to the inner
/// tolerance. That is what the monotone-sequence assertions lean on.
class InfconvFamily : public std::enable_shared_from_this<InfconvFamily> {
public:
    /// Throws InsufficientMetadataError when the decomposition or the
    /// growth metadata needed for the confinement radii is missing, and
    /// InvalidArgumentError for empty or non-increasing schedules.
    static std::shared_ptr<InfconvFamily> create(const GeneratorSpec& g,
                                                 std::vector<double> schedule,
                                                 double value_tol = 1e-9);

    std::size_t size() const { return schedule_.size(); }
    double penalty_at(std::size_t idx) const { return schedule_[idx]; }
    const std::vector<double>& schedule() const { return schedule_; }

    /// Regularized member as a GeneratorSpec (continuous, heavy, with the
    /// y-slope bound n + 2*mu~ recorded for the multi-root node solve).
    GeneratorSpec member(std::size_t idx) const;

    double eval(std::size_t idx, double t, double b, double y, double z) const;
    double eval_smooth(std::size_t idx, double t, double b, double y, double z) const;
    double eval_rough(std::size_t idx, double t, double b, double y, double z) const;

private:
    InfconvFamily() = default;

    std::shared_ptr<const GeneratorSpec> smooth_;  // g1: Osgood + z-growth metadata
    std::shared_ptr<const GeneratorSpec> rough_;   // g2: one-sided continuous + full growth
    std::vector<double> schedule_;
    double value_tol_ = 1e-9;
    double lambda_ = 0.0;                 // g1 z-growth slope
    double mu_t_ = 0.0, lambda_t_ = 0.0;  // g2 full-growth slopes
    double base_a_norm_ = 0.0;
};

/// Single regularization step: the one-member family at strength n.
GeneratorSpec infconv_regularize(const GeneratorSpec& g, double n);

/// All members of the schedule-sharing family, aligned with the schedule.
std::vector<GeneratorSpec> make_infconv_family(const GeneratorSpec& g,
                                               const std::vector<double>& schedule,
                                               double value_tol = 1e-9);

}  // namespace drbsde
