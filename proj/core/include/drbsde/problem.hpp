#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "drbsde/lattice.hpp"

namespace drbsde {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Continuous piecewise-linear function of time given by knots.
struct PiecewiseLinear {
    std::vector<double> t;  // strictly increasing
    std::vector<double> v;

    double operator()(double time) const;
    bool nondecreasing() const;

    static PiecewiseLinear zero() { return {{0.0}, {0.0}}; }
};

/// Splits a piecewise-linear V into the Jordan pair (V+, V-), both
/// nondecreasing with value 0 at the first knot.
std::pair<PiecewiseLinear, PiecewiseLinear> jordan_split(const PiecewiseLinear& v);

using SpaceTimeFn = std::function<double(double t, double b)>;
using TerminalFn = std::function<double(double b)>;

/// One DRBSDE instance before lattice discretization. Terminal data and
/// barriers are Markovian: functions of (t, Brownian value). Missing
/// barriers mean -inf / +inf (Remark-style one-barrier and unreflected
/// variants).
struct ProblemData {
    TerminalFn terminal;
    PiecewiseLinear v_plus = PiecewiseLinear::zero();   // nondecreasing, 0 at 0
    PiecewiseLinear v_minus = PiecewiseLinear::zero();  // nondecreasing, 0 at 0
    std::optional<SpaceTimeFn> lower;
    std::optional<SpaceTimeFn> upper;
    double exponent = 2.0;  // integrability exponent p > 1

    void validate() const;  // throws InvalidArgumentError
};

/// Problem data sampled onto a lattice. Barrier slots hold -inf/+inf when
/// the corresponding barrier is absent.
struct EvaluatedData {
    std::vector<double> terminal;            // level N
    std::vector<double> dv_plus, dv_minus;   // per step, >= 0
    LatticeProcess lower, upper;             // state-tagged, levels 0..N
    bool has_lower = false;
    bool has_upper = false;

    double dv(std::size_t step) const { return dv_plus[step] - dv_minus[step]; }
};

/// Samples terminal data, V increments and barriers per node and checks
/// feasibility: L <= U at every node, L_T <= xi <= U_T at the terminal
/// level. Violations throw InfeasibleProblemError with a node witness.
EvaluatedData evaluate_data(const ProblemData& problem, const Lattice& lattice);

}  // namespace drbsde
