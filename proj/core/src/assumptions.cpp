#include "drbsde/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "drbsde/parallel.hpp"

namespace drbsde {

namespace {

constexpr std::size_t kShards = 16;
constexpr double kJumpThreshold = 0.1;  // one-sided continuity violation size

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

struct ShardOutcome {
    bool violated = false;
    AssumptionWitness witness;
};

/// Runs one per-sample defect on deterministic substreams and merges to the
/// worst witness (ties broken by shard order).
template <typename DefectFn>
AssumptionResult run_check(const std::string& name, std::size_t samples, std::uint64_t seed,
                           std::uint64_t salt, const DefectFn& defect_at) {
    std::vector<ShardOutcome> outcomes(kShards);
    parallel_for(kShards, [&](std::size_t shard) {
        std::mt19937_64 rng(seed ^ (salt + 0x9e3779b97f4a7c15ULL * (shard + 1)));
        const std::size_t count = samples / kShards + (shard < samples % kShards ? 1 : 0);
        ShardOutcome& out = outcomes[shard];
        for (std::size_t s = 0; s < count; ++s) {
            AssumptionWitness w = defect_at(rng);
            if (w.defect > kAssumptionTol && (!out.violated || w.defect > out.witness.defect)) {
                out.violated = true;
                out.witness = w;
            }
        }
    });

    AssumptionResult result;
    result.name = name;
    result.samples = samples;
    for (const auto& out : outcomes) {
        if (out.violated &&
            (!result.witness || out.witness.defect > result.witness->defect)) {
            result.verdict = AssumptionVerdict::violated;
            result.witness = out.witness;
        }
    }
    return result;
}

}  // namespace

const AssumptionResult* AssumptionReport::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

bool AssumptionReport::any_violation() const {
    return std::any_of(results.begin(), results.end(), [](const AssumptionResult& r) {
        return r.verdict == AssumptionVerdict::violated;
    });
}

AssumptionReport check_assumptions(const GeneratorSpec& g, const SampleBox& box,
                                   std::size_t samples, std::uint64_t seed) {
    AssumptionReport report;
    auto draw_tb = [&box](std::mt19937_64& rng, AssumptionWitness& w) {
        w.t = uniform_in(rng, box.t_min, box.t_max);
        w.b = uniform_in(rng, box.b_min, box.b_max);
    };

    if (g.osgood) {
        const auto rho = g.osgood->rho;
        report.results.push_back(run_check(
            "osgood_one_sided_y", samples, seed, 1, [&](std::mt19937_64& rng) {
                AssumptionWitness w;
                draw_tb(rng, w);
                w.y1 = uniform_in(rng, box.y_min, box.y_max);
                w.y2 = uniform_in(rng, box.y_min, box.y_max);
                w.z1 = w.z2 = uniform_in(rng, box.z_min, box.z_max);
                const double dg =
                    g.eval(w.t, w.b, w.y1, w.z1) - g.eval(w.t, w.b, w.y2, w.z1);
                w.defect = dg * sgn(w.y1 - w.y2) - rho(std::abs(w.y1 - w.y2));
                return w;
            }));
    }

    if (g.z_modulus) {
        const auto phi = g.z_modulus->phi;
        report.results.push_back(run_check(
            "z_uniform_continuity", samples, seed, 2, [&](std::mt19937_64& rng) {
                AssumptionWitness w;
                draw_tb(rng, w);
                w.y1 = w.y2 = uniform_in(rng, box.y_min, box.y_max);
                w.z1 = uniform_in(rng, box.z_min, box.z_max);
                w.z2 = uniform_in(rng, box.z_min, box.z_max);
                const double dg =
                    g.eval(w.t, w.b, w.y1, w.z1) - g.eval(w.t, w.b, w.y1, w.z2);
                w.defect = std::abs(dg) - phi(std::abs(w.z1 - w.z2));
                return w;
            }));
    }

    if (g.z_growth) {
        const auto meta = *g.z_growth;
        report.results.push_back(run_check(
            "z_increment_growth", samples, seed, 3, [&](std::mt19937_64& rng) {
                AssumptionWitness w;
                draw_tb(rng, w);
                w.y1 = w.y2 = uniform_in(rng, box.y_min, box.y_max);
                w.z1 = uniform_in(rng, box.z_min, box.z_max);
                const double dg =
                    g.eval(w.t, w.b, w.y1, w.z1) - g.eval(w.t, w.b, w.y1, 0.0);
                w.defect = std::abs(dg) - (meta.f(w.t, w.b) + meta.mu * std::abs(w.y1) +
                                           meta.lambda * std::abs(w.z1));
                return w;
            }));
    }

    if (g.full_growth) {
        const auto meta = *g.full_growth;
        report.results.push_back(run_check(
            "linear_growth_y", samples, seed, 4, [&](std::mt19937_64& rng) {
                AssumptionWitness w;
                draw_tb(rng, w);
                w.y1 = uniform_in(rng, box.y_min, box.y_max);
                w.defect = std::abs(g.eval(w.t, w.b, w.y1, 0.0)) -
                           (meta.f(w.t, w.b) + meta.mu * std::abs(w.y1));
                return w;
            }));
        report.results.push_back(run_check(
            "full_linear_growth", samples, seed, 5, [&](std::mt19937_64& rng) {
                AssumptionWitness w;
                draw_tb(rng, w);
                w.y1 = uniform_in(rng, box.y_min, box.y_max);
                w.z1 = uniform_in(rng, box.z_min, box.z_max);
                w.defect = std::abs(g.eval(w.t, w.b, w.y1, w.z1)) -
                           (meta.f(w.t, w.b) + meta.mu * std::abs(w.y1) +
                            meta.lambda * std::abs(w.z1));
                return w;
            }));
        report.results.push_back(run_check(
            "signed_growth", samples, seed, 6, [&](std::mt19937_64& rng) {
                AssumptionWitness w;
                draw_tb(rng, w);
                w.y1 = uniform_in(rng, box.y_min, box.y_max);
                w.z1 = uniform_in(rng, box.z_min, box.z_max);
                w.defect = g.eval(w.t, w.b, w.y1, w.z1) * sgn(w.y1) -
                           (meta.f(w.t, w.b) + meta.mu * std::abs(w.y1) +
                            meta.lambda * std::abs(w.z1));
                return w;
            }));
    }

    // One-sided continuity probes matching the regularity tag: look for a
    // jump from the side that is supposed to be a limit, and for a drop
    // against the declared semicontinuity direction.
    const auto continuity_probe = [&](bool from_left, bool check_drop, const char* name,
                                      std::uint64_t salt) {
        report.results.push_back(run_check(name, samples, seed, salt, [&, from_left, check_drop](
                                                                          std::mt19937_64& rng) {
            AssumptionWitness w;
            draw_tb(rng, w);
            w.y1 = uniform_in(rng, box.y_min, box.y_max);
            w.z1 = w.z2 = uniform_in(rng, box.z_min, box.z_max);
            const double eps = 1e-12 * (1.0 + std::abs(w.y1));
            w.y2 = from_left ? w.y1 - eps : w.y1 + eps;
            const double g_at = g.eval(w.t, w.b, w.y1, w.z1);
            const double g_near = g.eval(w.t, w.b, w.y2, w.z1);
            if (check_drop)
                w.defect = (g_at - g_near) - kJumpThreshold;  // semicontinuity drop
            else
                w.defect = std::abs(g_near - g_at) - kJumpThreshold;  // limit mismatch
            return w;
        }));
    };
    switch (g.regularity) {
        case Regularity::continuous:
            continuity_probe(true, false, "y_continuity_left", 7);
            continuity_probe(false, false, "y_continuity_right", 8);
            break;
        case Regularity::left_limit_lsc:
            continuity_probe(true, false, "y_left_limit", 7);
            continuity_probe(false, true, "y_lower_semicontinuity", 8);
            break;
        case Regularity::right_limit_usc:
            continuity_probe(false, false, "y_right_limit", 7);
            // usc: g must not jump up approaching from the left
            report.results.push_back(
                run_check("y_upper_semicontinuity", samples, seed, 8, [&](std::mt19937_64& rng) {
                    AssumptionWitness w;
                    draw_tb(rng, w);
                    w.y1 = uniform_in(rng, box.y_min, box.y_max);
                    w.z1 = w.z2 = uniform_in(rng, box.z_min, box.z_max);
                    w.y2 = w.y1 - 1e-12 * (1.0 + std::abs(w.y1));
                    w.defect = (g.eval(w.t, w.b, w.y2, w.z1) - g.eval(w.t, w.b, w.y1, w.z1)) -
                               kJumpThreshold;
                    return w;
                }));
            break;
    }

    return report;
}

}  // namespace drbsde
