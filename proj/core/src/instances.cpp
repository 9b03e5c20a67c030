#include "drbsde/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace drbsde {

namespace {

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

GeneratorSpec affine_generator(double ay, double bz, double c0) {
    GeneratorSpec g;
    g.name = "affine";
    g.eval = [ay, bz, c0](double, double, double y, double z) { return ay * y + bz * z + c0; };
    const double a_pos = std::max(ay, 0.0);
    g.a_norm = std::max(a_pos, std::abs(bz));
    g.osgood = OsgoodMetadata{[a_pos](double x) { return a_pos * x; }};
    g.z_modulus = ZModulusMetadata{[bz](double x) { return std::abs(bz) * x; }};
    g.z_growth = ZGrowthMetadata{[](double, double) { return 0.0; }, 0.0, std::abs(bz)};
    g.full_growth = FullGrowthMetadata{[c0](double, double) { return std::abs(c0); },
                                       std::abs(ay), std::abs(bz)};
    return g;
}

SpaceTimeFn cosh_barrier(double a, double c, double s, double shift) {
    return [a, c, s, shift](double, double b) { return a - c * std::cosh(s * b) + shift; };
}

}  // namespace

RandomInstance make_random_instance(std::uint64_t seed, bool two_barrier) {
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);

    const double a = uniform_in(rng, -0.4, 0.4);
    const double c = uniform_in(rng, 0.05, 0.35);
    const double s = uniform_in(rng, 0.1, 0.35);
    const double gap = uniform_in(rng, 0.1, 1.2);

    RandomInstance inst;
    inst.problem.lower = cosh_barrier(a, c, s, 0.0);
    if (two_barrier) inst.problem.upper = cosh_barrier(a, c, s, gap);

    const double x0 = uniform_in(rng, -0.5, 0.5);
    const double x1 = uniform_in(rng, -0.5, 0.5);
    const SpaceTimeFn lower = *inst.problem.lower;
    if (two_barrier) {
        const SpaceTimeFn upper = *inst.problem.upper;
        inst.problem.terminal = [x0, x1, lower, upper](double b) {
            return std::clamp(x0 + x1 * b, lower(0.0, b), upper(0.0, b));
        };
    } else {
        inst.problem.terminal = [x0, x1, lower](double b) {
            return std::max(x0 + x1 * b, lower(0.0, b));
        };
    }

    const double v_slope1 = uniform_in(rng, -0.3, 0.3);
    const double v_slope2 = uniform_in(rng, -0.3, 0.3);
    PiecewiseLinear v{{0.0, 0.5, 1.0}, {0.0, 0.5 * v_slope1, 0.5 * (v_slope1 + v_slope2)}};
    auto [plus, minus] = jordan_split(v);
    inst.problem.v_plus = std::move(plus);
    inst.problem.v_minus = std::move(minus);

    const double ps[3] = {1.5, 2.0, 3.0};
    inst.problem.exponent = ps[rng() % 3];

    const int pick = static_cast<int>(rng() % 4);
    double ay = 0.0, bz = 0.0, c0 = 0.0;
    if (pick == 1) {
        c0 = uniform_in(rng, -1.5, 1.5);
    } else if (pick == 2) {
        ay = uniform_in(rng, -1.0, 1.0);
        bz = uniform_in(rng, -0.9, 0.9);
    } else if (pick == 3) {
        ay = uniform_in(rng, -1.0, 1.0);
        bz = uniform_in(rng, -0.9, 0.9);
        c0 = uniform_in(rng, -1.5, 1.5);
    }
    inst.generator = affine_generator(ay, bz, c0);
    inst.label = "affine(" + std::to_string(ay) + "," + std::to_string(bz) + "," +
                 std::to_string(c0) + ")";
    return inst;
}

OrderedPair make_ordered_pair(std::uint64_t seed, bool equal_barriers) {
    std::mt19937_64 rng(seed ^ 0x94d049bb133111ebULL);

    const double a = uniform_in(rng, -0.4, 0.4);
    const double c = uniform_in(rng, 0.05, 0.35);
    const double s = uniform_in(rng, 0.1, 0.35);
    const double gap = uniform_in(rng, 0.15, 1.2);
    const double d_low = equal_barriers ? 0.0 : uniform_in(rng, 0.0, 0.1);
    const double d_up = equal_barriers ? 0.0 : d_low + uniform_in(rng, 0.0, 0.3);

    OrderedPair pair;
    pair.equal_barriers = equal_barriers;

    SpaceTimeFn lower1 = cosh_barrier(a, c, s, 0.0);
    SpaceTimeFn upper1 = cosh_barrier(a, c, s, gap);
    pair.first.problem.lower = lower1;
    pair.first.problem.upper = upper1;
    if (equal_barriers) {  // shared objects: exact equality node-for-node
        pair.second.problem.lower = lower1;
        pair.second.problem.upper = upper1;
    } else {
        pair.second.problem.lower = cosh_barrier(a, c, s, d_low);
        pair.second.problem.upper = cosh_barrier(a, c, s, gap + d_up);
    }

    const double x0 = uniform_in(rng, -0.5, 0.5);
    const double x1 = uniform_in(rng, -0.5, 0.5);
    const double d_xi = uniform_in(rng, 0.0, 0.5);
    auto clipped_terminal = [](double x0v, double x1v, SpaceTimeFn low, SpaceTimeFn up) {
        return TerminalFn([x0v, x1v, low, up](double b) {
            return std::clamp(x0v + x1v * b, low(0.0, b), up(0.0, b));
        });
    };
    pair.first.problem.terminal =
        clipped_terminal(x0, x1, *pair.first.problem.lower, *pair.first.problem.upper);
    pair.second.problem.terminal =
        clipped_terminal(x0 + d_xi, x1, *pair.second.problem.lower, *pair.second.problem.upper);

    const double v_slope = uniform_in(rng, -0.3, 0.3);
    const double extra = uniform_in(rng, 0.0, 0.2);
    PiecewiseLinear v1{{0.0, 1.0}, {0.0, v_slope}};
    PiecewiseLinear v2{{0.0, 1.0}, {0.0, v_slope + extra}};
    auto [p1, m1] = jordan_split(v1);
    auto [p2, m2] = jordan_split(v2);
    pair.first.problem.v_plus = p1;
    pair.first.problem.v_minus = m1;
    pair.second.problem.v_plus = p2;
    pair.second.problem.v_minus = m2;

    const double ps[3] = {1.5, 2.0, 3.0};
    pair.first.problem.exponent = pair.second.problem.exponent = ps[rng() % 3];

    const double ay = uniform_in(rng, -1.0, 1.0);
    const double bz = uniform_in(rng, -0.9, 0.9);
    const double c0 = uniform_in(rng, -1.0, 1.0);
    const double d_g = uniform_in(rng, 0.0, 1.0);
    pair.first.generator = affine_generator(ay, bz, c0);
    pair.second.generator = affine_generator(ay, bz, c0 + d_g);
    pair.first.label = pair.second.label = "affine pair";
    return pair;
}

}  // namespace drbsde
