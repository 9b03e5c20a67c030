#include "drbsde/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "drbsde/errors.hpp"
#include "drbsde/parallel.hpp"

namespace drbsde {

namespace {

constexpr double kBisectTol = 1e-12;
constexpr int kMaxDoublings = 64;
constexpr int kScanCells = 64;

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    // invariant: f(lo) <= 0 <= f(hi)
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // step below fp resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double implicit_node_solve(double cont, double z, double t, double b,
                           const GeneratorSpec& generator, double dt, double dv,
                           RootSelect select) {
    if (dt * generator.a_norm >= 1.0)
        throw StepTooCoarseError("implicit node solve: dt * A_norm >= 1, refine the grid");

    const auto f = [&](double y) {
        return y - cont - dt * generator.eval(t, b, y, z) - dv;
    };

    double radius = std::abs(dv) +
                    dt * (std::abs(generator.eval(t, b, cont, z)) +
                          generator.a_norm * (1.0 + std::abs(cont)));
    radius = std::max(radius, 1e-8 * (1.0 + std::abs(cont)));

    double lo = cont - radius;
    double hi = cont + radius;
    int doublings = 0;
    while (f(lo) > 0.0 || f(hi) < 0.0) {
        if (++doublings > kMaxDoublings)
            throw GeneratorGrowthError(
                "implicit node solve: no sign change after 64 bracket doublings "
                "(generator growth violates its declared bounds)");
        radius *= 2.0;
        lo = cont - radius;
        hi = cont + radius;
    }

    // Contractive case: the root is unique and plain bisection finds it.
    const bool multi_root_possible =
        generator.y_slope_bound && *generator.y_slope_bound * dt >= 0.5;
    if (!multi_root_possible) return bisect(f, lo, hi);

    // Steep generators (penalty constant beyond the 1/dt scale) can make
    // y - dt*g(y) dip locally; pick the extreme sign change so minimal /
    // maximal solution runs select roots consistently.
    double fs[kScanCells + 1];
    double xs[kScanCells + 1];
    for (int i = 0; i <= kScanCells; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / kScanCells;
        fs[i] = i == 0 ? f(lo) : (i == kScanCells ? f(hi) : f(xs[i]));
    }
    if (select == RootSelect::lowest) {
        for (int i = 0; i < kScanCells; ++i)
            if (fs[i] <= 0.0 && fs[i + 1] >= 0.0) return bisect(f, xs[i], xs[i + 1]);
    } else {
        for (int i = kScanCells; i > 0; --i)
            if (fs[i - 1] <= 0.0 && fs[i] >= 0.0) return bisect(f, xs[i - 1], xs[i]);
    }
    return bisect(f, lo, hi);
}

SolutionQuadruple solve_dp(const EvaluatedData& data, const Lattice& lattice,
                           const GeneratorSpec& generator, double exponent,
                           const SolverOptions& options) {
    if (generator.regularity != Regularity::continuous)
        throw InvalidArgumentError(
            "solve_dp: generator must be continuous in y (regularize discontinuous ones first)");

    const std::size_t n = lattice.steps();
    const double dt = lattice.dt();
    const double two_sqrt_dt = 2.0 * lattice.sqrt_dt();

    SolutionQuadruple sol;
    sol.y = LatticeProcess::states(lattice);
    sol.z = LatticeProcess::increments(lattice);
    sol.z.kind = ProcessKind::state;
    sol.dk = LatticeProcess::increments(lattice);
    sol.da = LatticeProcess::increments(lattice);

    sol.y.values[n] = data.terminal;

    for (std::size_t level = n; level-- > 0;) {
        const double t_eval = step_eval_time(lattice, level);
        const double dv = data.dv(level);
        const auto solve_node = [&](std::size_t k) {
            const double y_up = sol.y.at(level + 1, k + 1);
            const double y_down = sol.y.at(level + 1, k);
            const double cont = 0.5 * (y_up + y_down);
            const double zv = (y_up - y_down) / two_sqrt_dt;
            const double b = lattice.value(level, k);
            const double y_free =
                implicit_node_solve(cont, zv, t_eval, b, generator, dt, dv, options.root_select);

            double yv = y_free, dkv = 0.0, dav = 0.0;
            const double up = data.upper.at(level, k);
            const double low = data.lower.at(level, k);
            if (y_free > up) {
                yv = up;
                dav = y_free - up;
            } else if (y_free < low) {
                yv = low;
                dkv = low - y_free;
            }
            sol.y.at(level, k) = yv;
            sol.z.at(level, k) = zv;
            sol.dk.at(level, k) = dkv;
            sol.da.at(level, k) = dav;
        };
        if (generator.heavy)
            parallel_for(level + 1, solve_node);
        else
            for (std::size_t k = 0; k <= level; ++k) solve_node(k);
    }

    refresh_diagnostics(sol, data, lattice, exponent);
    return sol;
}

SolutionQuadruple solve_dp(const ProblemData& problem, const Lattice& lattice,
                           const GeneratorSpec& generator, const SolverOptions& options) {
    const EvaluatedData data = evaluate_data(problem, lattice);
    return solve_dp(data, lattice, generator, problem.exponent, options);
}

void refresh_diagnostics(SolutionQuadruple& sol, const EvaluatedData& data,
                         const Lattice& lattice, double exponent) {
    const std::size_t n = lattice.steps();
    Diagnostics d;

    // Probability-weighted residuals and totals, rolling the Pascal row.
    std::vector<double> w{1.0};
    double z_sq_int = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ez2 = 0.0;
        for (std::size_t k = 0; k <= i; ++k) {
            const double dk = sol.dk.at(i, k);
            const double da = sol.da.at(i, k);
            const double y = sol.y.at(i, k);
            const double low = data.lower.at(i, k);
            const double up = data.upper.at(i, k);
            if (dk != 0.0) d.r_k += w[k] * (y - low) * dk;
            if (da != 0.0) d.r_a += w[k] * (up - y) * da;
            d.r_s += w[k] * std::min(dk, da);
            d.mean_k_total += w[k] * dk;
            d.mean_a_total += w[k] * da;
            ez2 += w[k] * sol.z.at(i, k) * sol.z.at(i, k);
            d.sup_z = std::max(d.sup_z, std::abs(sol.z.at(i, k)));
        }
        z_sq_int += ez2 * lattice.dt();
        std::vector<double> next(i + 2, 0.0);
        for (std::size_t k = 0; k <= i; ++k) {
            const double half = 0.5 * w[k];
            next[k] += half;
            next[k + 1] += half;
        }
        w = std::move(next);
    }
    d.lp_z = std::sqrt(z_sq_int);

    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k <= i; ++k)
            d.sup_y = std::max(d.sup_y, std::abs(sol.y.at(i, k)));

    // Backward recursions: Snell envelope of |Y|^p and worst-path K/A totals.
    std::vector<double> snell(n + 1), kmax(n + 1, 0.0), amax(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
        snell[k] = std::pow(std::abs(sol.y.at(n, k)), exponent);
    for (std::size_t i = n; i-- > 0;) {
        std::vector<double> snell_next(i + 1), kmax_next(i + 1), amax_next(i + 1);
        for (std::size_t k = 0; k <= i; ++k) {
            snell_next[k] = std::max(std::pow(std::abs(sol.y.at(i, k)), exponent),
                                     0.5 * (snell[k] + snell[k + 1]));
            kmax_next[k] = sol.dk.at(i, k) + std::max(kmax[k], kmax[k + 1]);
            amax_next[k] = sol.da.at(i, k) + std::max(amax[k], amax[k + 1]);
        }
        snell = std::move(snell_next);
        kmax = std::move(kmax_next);
        amax = std::move(amax_next);
    }
    d.lp_y = std::pow(snell[0], 1.0 / exponent);
    d.sup_k_total = kmax[0];
    d.sup_a_total = amax[0];

    sol.diag = d;
}

double SolutionQuadruple::sup_gap(const SolutionQuadruple& other) const {
    double gap = 0.0;
    for (std::size_t i = 0; i < y.values.size(); ++i)
        for (std::size_t k = 0; k < y.values[i].size(); ++k)
            gap = std::max(gap, std::abs(y.values[i][k] - other.y.values[i][k]));
    return gap;
}

}  // namespace drbsde
