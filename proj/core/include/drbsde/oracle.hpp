#pragma once

#include "drbsde/generator.hpp"
#include "drbsde/lattice.hpp"
#include "drbsde/problem.hpp"

namespace drbsde {

/// Which root of the implicit node equation to report when the generator's
/// y-slope makes the equation possibly multi-rooted (regularized families
/// with large penalty constants). `lowest` tracks minimal solutions,
/// `highest` maximal ones; for contractive generators all selections agree.
enum class RootSelect { lowest, highest };

struct SolverOptions {
    RootSelect root_select = RootSelect::lowest;
};

/// Lattice statistics of a solved quadruple. Residuals are probability-
/// weighted sums over nodes; sup norms are maxima over nodes (for K_T, A_T
/// over paths, via a backward max recursion). lp_y is the Snell envelope of
/// |Y|^p at the root, to the 1/p; lp_z is sqrt(sum_i E|Z_i|^2 dt); the K/A
/// L^p slots carry the first moments E[K_T], E[A_T] (desk-scale stand-ins
/// for the path L^p norms).
struct Diagnostics {
    double r_k = 0.0, r_a = 0.0, r_s = 0.0;
    double sup_y = 0.0, sup_z = 0.0;
    double sup_k_total = 0.0, sup_a_total = 0.0;
    double lp_y = 0.0, lp_z = 0.0;
    double mean_k_total = 0.0, mean_a_total = 0.0;
};

/// Discrete solution quadruple (Y, Z, K, A): Y on levels 0..N, Z and the
/// K/A step increments on interior levels 0..N-1. Increments are
/// nonnegative; the projection step keeps min(dK, dA) = 0 node-wise.
struct SolutionQuadruple {
    LatticeProcess y;
    LatticeProcess z;
    LatticeProcess dk;
    LatticeProcess da;
    Diagnostics diag;

    double sup_gap(const SolutionQuadruple& other) const;
};

/// One implicit Euler step: the unique y with y = cont + dt*g(t,b,y,z) + dv,
/// found by bracketing and bisection to absolute tolerance 1e-12.
/// Throws StepTooCoarseError when dt*a_norm >= 1 and GeneratorGrowthError
/// when 64 bracket doublings cannot enclose a sign change.
double implicit_node_solve(double cont, double z, double t, double b,
                           const GeneratorSpec& generator, double dt, double dv,
                           RootSelect select = RootSelect::lowest);

/// Backward dynamic programming for the discretized equation with zero, one
/// or two reflecting barriers. Per node: continuation = child average,
/// Z = (Y_up - Y_down)/(2 sqrt(dt)), implicit free step, then projection
/// onto [L, U] with the overshoot assigned to exactly one of dK / dA.
SolutionQuadruple solve_dp(const ProblemData& problem, const Lattice& lattice,
                           const GeneratorSpec& generator, const SolverOptions& options = {});
SolutionQuadruple solve_dp(const EvaluatedData& data, const Lattice& lattice,
                           const GeneratorSpec& generator, double exponent,
                           const SolverOptions& options = {});

/// Recomputes diagnostics after dk/da were replaced (penalized extractions).
void refresh_diagnostics(SolutionQuadruple& solution, const EvaluatedData& data,
                         const Lattice& lattice, double exponent);

/// Generator evaluation time for step i: max(t_i, dt/2). Floors the
/// integrable t=0 singularities the catalog allows without changing
/// t-independent drivers.
inline double step_eval_time(const Lattice& lattice, std::size_t level) {
    const double t = lattice.time_at(level);
    const double floor_t = 0.5 * lattice.dt();
    return t > floor_t ? t : floor_t;
}

}  // namespace drbsde
