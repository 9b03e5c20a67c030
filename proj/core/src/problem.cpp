#include "drbsde/problem.hpp"

#include <algorithm>
#include <cmath>

#include "drbsde/errors.hpp"

namespace drbsde {

double PiecewiseLinear::operator()(double time) const {
    if (t.empty()) return 0.0;
    if (time <= t.front()) return v.front();
    if (time >= t.back()) return v.back();
    auto it = std::upper_bound(t.begin(), t.end(), time);
    const std::size_t hi = static_cast<std::size_t>(it - t.begin());
    const std::size_t lo = hi - 1;
    const double w = (time - t[lo]) / (t[hi] - t[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
}

bool PiecewiseLinear::nondecreasing() const {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

std::pair<PiecewiseLinear, PiecewiseLinear> jordan_split(const PiecewiseLinear& v) {
    PiecewiseLinear plus{{}, {}}, minus{{}, {}};
    if (v.t.empty()) return {PiecewiseLinear::zero(), PiecewiseLinear::zero()};
    plus.t = minus.t = v.t;
    plus.v.assign(v.t.size(), 0.0);
    minus.v.assign(v.t.size(), 0.0);
    for (std::size_t i = 1; i < v.t.size(); ++i) {
        const double dv = v.v[i] - v.v[i - 1];
        plus.v[i] = plus.v[i - 1] + std::max(dv, 0.0);
        minus.v[i] = minus.v[i - 1] + std::max(-dv, 0.0);
    }
    return {std::move(plus), std::move(minus)};
}

void ProblemData::validate() const {
    if (!terminal) throw InvalidArgumentError("problem: terminal condition missing");
    if (!(exponent > 1.0)) throw InvalidArgumentError("problem: exponent p must be > 1");
    if (!v_plus.nondecreasing() || !v_minus.nondecreasing())
        throw InvalidArgumentError("problem: forcing components V+/V- must be nondecreasing");
    auto strictly_increasing = [](const std::vector<double>& t) {
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!(t[i] > t[i - 1])) return false;
        return true;
    };
    if (!strictly_increasing(v_plus.t) || !strictly_increasing(v_minus.t))
        throw InvalidArgumentError("problem: forcing knots must be strictly increasing");
}

EvaluatedData evaluate_data(const ProblemData& problem, const Lattice& lattice) {
    problem.validate();

    const std::size_t n = lattice.steps();
    EvaluatedData out;
    out.has_lower = problem.lower.has_value();
    out.has_upper = problem.upper.has_value();

    out.dv_plus.resize(n);
    out.dv_minus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t0 = lattice.time_at(i);
        const double t1 = lattice.time_at(i + 1);
        out.dv_plus[i] = problem.v_plus(t1) - problem.v_plus(t0);
        out.dv_minus[i] = problem.v_minus(t1) - problem.v_minus(t0);
    }

    out.lower = LatticeProcess::states(lattice, kNegInf);
    out.upper = LatticeProcess::states(lattice, kPosInf);
    for (std::size_t i = 0; i < lattice.levels(); ++i) {
        const double t = lattice.time_at(i);
        for (std::size_t k = 0; k <= i; ++k) {
            const double b = lattice.value(i, k);
            if (out.has_lower) out.lower.at(i, k) = (*problem.lower)(t, b);
            if (out.has_upper) out.upper.at(i, k) = (*problem.upper)(t, b);
            if (out.lower.at(i, k) > out.upper.at(i, k))
                throw InfeasibleProblemError("infeasible problem: barriers out of order (lower > upper)",
                                             NodeRef{i, k});
        }
    }

    out.terminal.resize(lattice.level_size(n));
    for (std::size_t k = 0; k <= n; ++k) {
        const double xi = problem.terminal(lattice.value(n, k));
        if (!std::isfinite(xi))
            throw InfeasibleProblemError("infeasible problem: terminal value not finite", NodeRef{n, k});
        if (xi < out.lower.at(n, k) || xi > out.upper.at(n, k))
            throw InfeasibleProblemError("infeasible problem: terminal outside [L_T, U_T]", NodeRef{n, k});
        out.terminal[k] = xi;
    }
    return out;
}

}  // namespace drbsde
