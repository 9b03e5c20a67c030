#include "drbsde/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "drbsde/builtins.hpp"
#include "drbsde/errors.hpp"
#include "drbsde/infconv.hpp"
#include "drbsde/mokobodzki.hpp"
#include "drbsde/verification.hpp"

namespace drbsde {

namespace {

std::string fmt(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

struct CsvRow {
    std::size_t grid_steps = 0;
    double n = 0.0;
    std::size_t t_index = 0;
    long long node_j = 0;
    double y = 0.0, z = 0.0, dk = 0.0, da = 0.0;
    double rk = 0.0, ra = 0.0, rs = 0.0;
    double gap = 0.0;
};

/// Rows for one solution: every node of every level, terminal levels with
/// zero Z/dK/dA. r_K, r_A, r_S are the per-node complementarity products.
void append_solution_rows(std::vector<CsvRow>& rows, const SolutionQuadruple& sol,
                          const EvaluatedData& data, const Lattice& lattice, double n,
                          double gap) {
    for (std::size_t i = 0; i < lattice.levels(); ++i) {
        const bool interior = i < lattice.steps();
        for (std::size_t k = 0; k <= i; ++k) {
            CsvRow row;
            row.grid_steps = lattice.steps();
            row.n = n;
            row.t_index = i;
            row.node_j = lattice.j_index(i, k);
            row.y = sol.y.at(i, k);
            row.gap = gap;
            if (interior) {
                row.z = sol.z.at(i, k);
                row.dk = sol.dk.at(i, k);
                row.da = sol.da.at(i, k);
                if (row.dk != 0.0) row.rk = (row.y - data.lower.at(i, k)) * row.dk;
                if (row.da != 0.0) row.ra = (data.upper.at(i, k) - row.y) * row.da;
                row.rs = std::min(row.dk, row.da);
            }
            rows.push_back(row);
        }
    }
}

void write_csv(const std::string& path, const char* mode, std::uint64_t seed,
               const std::vector<CsvRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write results file '" + path + "'");
    out << "mode,seed,N,n,t_index,node_j,Y,Z,dK,dA,r_K,r_A,r_S,gap\n";
    for (const auto& r : rows) {
        out << mode << ',' << seed << ',' << r.grid_steps << ',' << fmt(r.n) << ','
            << r.t_index << ',' << r.node_j << ',' << fmt(r.y) << ',' << fmt(r.z) << ','
            << fmt(r.dk) << ',' << fmt(r.da) << ',' << fmt(r.rk) << ',' << fmt(r.ra) << ','
            << fmt(r.rs) << ',' << fmt(r.gap) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

/// Y along the zero-Brownian spine; odd levels average the two middle nodes.
void write_spine(const std::string& path, const SolutionQuadruple& sol,
                 const Lattice& lattice) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write plot file '" + path + "'");
    for (std::size_t i = 0; i < lattice.levels(); ++i) {
        double y;
        if (i % 2 == 0) {
            y = sol.y.at(i, i / 2);
        } else {
            y = 0.5 * (sol.y.at(i, (i - 1) / 2) + sol.y.at(i, (i + 1) / 2));
        }
        out << fmt(lattice.time_at(i)) << '\t' << fmt(y) << '\n';
    }
}

void write_gaps(const std::string& path, const std::vector<std::pair<double, double>>& gaps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write plot file '" + path + "'");
    for (const auto& [n, gap] : gaps) out << fmt(n) << '\t' << fmt(gap) << '\n';
}

std::string describe_check(const OrderingCheck& check) {
    std::ostringstream out;
    out << check.violations << "/" << check.checked;
    if (check.violations > 0) out << " worst=" << fmt(check.worst_defect);
    return out.str();
}

GeneratorSpec build_generator(const ExperimentConfig& cfg) {
    if (cfg.part1 && cfg.part2)
        return sum_with_decomposition(builtin(*cfg.part1), builtin(*cfg.part2));
    return builtin(cfg.generator_name);
}

struct ModeOutput {
    int exit_code = 0;
    std::string summary;
    std::vector<CsvRow> rows;
    std::optional<SolutionQuadruple> spine;
    std::vector<std::pair<double, double>> gap_table;
};

ModeOutput run_mode(const ExperimentConfig& cfg, const Lattice& lattice) {
    ModeOutput out;
    switch (cfg.mode) {
        case RunMode::solve: {
            const ProblemData problem = cfg.build_problem();
            const GeneratorSpec gen = build_generator(cfg);
            const EvaluatedData data = evaluate_data(problem, lattice);
            const SolutionQuadruple sol = solve_dp(data, lattice, gen, problem.exponent);
            append_solution_rows(out.rows, sol, data, lattice, 0.0, 0.0);
            std::ostringstream s;
            s << "solve ok: N=" << lattice.steps() << " Y_root=" << fmt(sol.y.at(0, 0))
              << " r_K=" << fmt(sol.diag.r_k) << " r_A=" << fmt(sol.diag.r_a)
              << " r_S=" << fmt(sol.diag.r_s);
            out.summary = s.str();
            out.spine = sol;
            break;
        }
        case RunMode::penalize: {
            const ProblemData problem = cfg.build_problem();
            const GeneratorSpec gen = build_generator(cfg);
            const EvaluatedData data = evaluate_data(problem, lattice);
            const PenalizationReport report = run_penalization(
                problem, lattice, gen, cfg.scheme, cfg.effective_schedule(), cfg.tol);
            for (std::size_t i = 0; i < report.entries.size(); ++i) {
                const double gap = i == 0 ? 0.0 : report.gaps[i - 1];
                append_solution_rows(out.rows, report.entries[i].solution, data, lattice,
                                     report.entries[i].n, gap);
                out.gap_table.emplace_back(report.entries[i].n, gap);
            }
            out.spine = report.final_solution();
            std::ostringstream s;
            s << "penalize ok: converged=" << (report.converged ? 1 : 0)
              << " n_final=" << fmt(report.final_n()) << " entries=" << report.entries.size()
              << " last_gap=" << fmt(report.gaps.empty() ? 0.0 : report.gaps.back());
            out.summary = s.str();
            if (!report.converged) out.exit_code = 4;
            break;
        }
        case RunMode::agree: {
            const ProblemData problem = cfg.build_problem();
            const GeneratorSpec gen = build_generator(cfg);
            const EvaluatedData data = evaluate_data(problem, lattice);
            const AgreementReport report = three_scheme_agreement(
                problem, lattice, gen, cfg.tol, cfg.effective_schedule());
            for (std::size_t i = 0; i < report.both_pen.size(); ++i) {
                const double gap =
                    i == 0 ? 0.0
                           : report.both_pen[i].solution.sup_gap(report.both_pen[i - 1].solution);
                append_solution_rows(out.rows, report.both_pen[i].solution, data, lattice,
                                     report.both_pen[i].n, gap);
                out.gap_table.emplace_back(report.both_pen[i].n, gap);
            }
            out.spine = report.both_pen.back().solution;
            std::ostringstream s;
            s << "agree ok: max_limit_gap=" << fmt(report.max_limit_gap)
              << " sandwich=" << describe_check(report.sandwich)
              << " dK_chain=" << describe_check(report.dk_hard_le_both) << "|"
              << describe_check(report.dk_both_le_lower)
              << " dA_chain=" << describe_check(report.da_hard_le_both) << "|"
              << describe_check(report.da_both_le_upper);
            out.summary = s.str();
            break;
        }
        case RunMode::compare: {
            const ProblemData p1 = cfg.build_problem();
            const ProblemData p2 = cfg.build_problem2();
            const GeneratorSpec g1 = builtin(cfg.generator_name);
            const GeneratorSpec g2 =
                builtin(cfg.generator2_name ? *cfg.generator2_name : cfg.generator_name);
            const EvaluatedData d1 = evaluate_data(p1, lattice);
            const SolvedInstance first = solve_instance(p1, g1, lattice);
            const SolvedInstance second = solve_instance(p2, g2, lattice);
            const ComparisonVerdict verdict =
                comparison_harness(first, second, lattice, cfg.tol);

            append_solution_rows(out.rows, first.solution, d1, lattice, 0.0, 0.0);
            // gap column: per-node Y2 - Y1
            std::size_t row_idx = 0;
            for (std::size_t i = 0; i < lattice.levels(); ++i)
                for (std::size_t k = 0; k <= i; ++k, ++row_idx)
                    out.rows[row_idx].gap =
                        second.solution.y.at(i, k) - first.solution.y.at(i, k);
            out.spine = first.solution;
            std::ostringstream s;
            s << "compare: y_ordered=" << (verdict.y_ordered ? 1 : 0)
              << " worst_y_defect=" << fmt(verdict.worst_y_defect);
            if (verdict.increments_checked)
                s << " dk_ordered=" << (verdict.dk_ordered ? 1 : 0)
                  << " da_ordered=" << (verdict.da_ordered ? 1 : 0);
            out.summary = s.str();
            const bool ok = verdict.y_ordered &&
                            (!verdict.increments_checked ||
                             (verdict.dk_ordered && verdict.da_ordered));
            if (!ok) out.exit_code = 2;
            break;
        }
        case RunMode::study: {
            const ProblemData problem = cfg.build_problem();
            const GeneratorSpec gen = build_generator(cfg);
            std::vector<std::size_t> grids = cfg.grid_schedule;
            if (grids.empty()) grids = {50, 100, 200};
            const StudyTable table =
                convergence_study(problem, gen, grids, cfg.effective_schedule(), cfg.horizon);
            double max_gap = 0.0, min_gap = kPosInf;
            for (const auto& cell : table.cells) {
                CsvRow row;
                row.grid_steps = cell.grid_steps;
                row.n = cell.n;
                row.gap = cell.gap;
                out.rows.push_back(row);
                max_gap = std::max(max_gap, cell.gap);
                min_gap = std::min(min_gap, cell.gap);
            }
            std::ostringstream s;
            s << "study ok: cells=" << table.cells.size() << " max_gap=" << fmt(max_gap)
              << " min_gap=" << fmt(min_gap);
            out.summary = s.str();
            break;
        }
        case RunMode::check: {
            const GeneratorSpec gen = build_generator(cfg);
            const AssumptionReport report =
                check_assumptions(gen, cfg.box, cfg.samples, cfg.seed);
            std::ostringstream s;
            s << "check:";
            for (const auto& result : report.results) {
                s << ' ' << result.name << '='
                  << (result.verdict == AssumptionVerdict::violated ? "violated"
                                                                    : "no_violation_found");
                if (result.witness) s << "(defect=" << fmt(result.witness->defect) << ")";
            }
            out.summary = s.str();
            break;
        }
        case RunMode::mokobodzki: {
            if (!cfg.x_candidate)
                throw InvalidArgumentError("config: [run] x_candidate: required for mokobodzki");
            const ProblemData problem = cfg.build_problem();
            const GeneratorSpec gen = build_generator(cfg);
            const Expression expr = *cfg.x_candidate;
            const MokobodzkiVerdict verdict = mokobodzki_check(
                problem, lattice, gen,
                [expr](double t, double b) { return expr.eval(t, b); });
            // Necessity direction: the same statistic along the solved Y.
            const SolutionQuadruple sol = solve_dp(problem, lattice, gen);
            const double along_y = hp_statistic(gen, lattice, sol.y, problem.exponent);
            std::ostringstream s;
            s << "mokobodzki: pass=" << (verdict.pass ? 1 : 0)
              << " hp_candidate=" << fmt(verdict.hp_statistic)
              << " hp_along_Y=" << fmt(along_y);
            if (!verdict.pass && verdict.band_witness)
                s << " band_violation_at=(" << verdict.band_witness->level << ","
                  << verdict.band_witness->node << ") defect=" << fmt(verdict.band_defect);
            out.summary = s.str();
            if (!verdict.pass) out.exit_code = 2;
            break;
        }
        case RunMode::monotone: {
            if (!cfg.part1 || !cfg.part2)
                throw InvalidArgumentError(
                    "config: [generator] g1/g2: monotone mode needs a decomposition");
            const ProblemData problem = cfg.build_problem();
            const GeneratorSpec gen = build_generator(cfg);
            const EvaluatedData data = evaluate_data(problem, lattice);
            std::vector<double> schedule = cfg.penalty_schedule;
            if (schedule.empty()) schedule = default_penalty_schedule(1024.0);
            const std::vector<GeneratorSpec> members = make_infconv_family(gen, schedule);
            const MonotoneReport report = solve_monotone_sequence(
                problem, lattice, members, cfg.direction, schedule, cfg.tol);
            for (std::size_t i = 0; i < report.entries.size(); ++i) {
                const double gap = i == 0 ? 0.0 : report.gaps[i - 1];
                append_solution_rows(out.rows, report.entries[i].solution, data, lattice,
                                     report.entries[i].n, gap);
                out.gap_table.emplace_back(report.entries[i].n, gap);
            }
            out.spine = report.limit();
            const SkorokhodResiduals res = skorokhod_report(report.limit(), data, lattice);
            std::ostringstream s;
            s << "monotone ok: direction="
              << (report.direction == MonotoneDirection::up ? "up" : "down")
              << " converged=" << (report.converged ? 1 : 0)
              << " n_final=" << fmt(report.final_n()) << " r_K=" << fmt(res.r_k)
              << " r_A=" << fmt(res.r_a) << " r_S=" << fmt(res.r_s);
            out.summary = s.str();
            if (!report.converged) out.exit_code = 4;
            break;
        }
    }
    return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    try {
        const Lattice lattice(build_time_grid(cfg.horizon, cfg.steps));
        ModeOutput out = run_mode(cfg, lattice);

        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "'");

        if (cfg.write_csv)
            write_csv(cfg.out_dir + "/results.csv", mode_name(cfg.mode), cfg.seed, out.rows);
        if (cfg.write_plot) {
            if (out.spine)
                write_spine(cfg.out_dir + "/spine.tsv", *out.spine, lattice);
            if (!out.gap_table.empty()) write_gaps(cfg.out_dir + "/gaps.tsv", out.gap_table);
            if (cfg.mode == RunMode::study) {
                // per-grid gap tables
                std::map<std::size_t, std::vector<std::pair<double, double>>> by_grid;
                for (const auto& row : out.rows)
                    by_grid[row.grid_steps].emplace_back(row.n, row.gap);
                for (const auto& [steps, gaps] : by_grid)
                    write_gaps(cfg.out_dir + "/gaps_N" + std::to_string(steps) + ".tsv", gaps);
            }
        }
        return {out.exit_code, out.summary};
    } catch (const MonotonicityViolationError& e) {
        return {2, std::string("violation: ") + e.what() + " at (" +
                       std::to_string(e.where.level) + "," + std::to_string(e.where.node) +
                       ") defect=" + fmt(e.defect)};
    } catch (const SandwichViolationError& e) {
        return {2, std::string("violation: ") + e.what() + " at (" +
                       std::to_string(e.where.level) + "," + std::to_string(e.where.node) +
                       ") defect=" + fmt(e.defect)};
    } catch (const LimitDisagreementError& e) {
        return {2, std::string("violation: ") + e.what() + " gap=" + fmt(e.gap)};
    } catch (const UniquenessViolationError& e) {
        return {2, std::string("violation: ") + e.what() + " gap=" + fmt(e.gap)};
    } catch (const ComparisonSetupError& e) {
        return {3, std::string("invalid setup: ") + e.what()};
    } catch (const InfeasibleProblemError& e) {
        return {3, std::string("infeasible: ") + e.what() + " at node (" +
                       std::to_string(e.where.level) + "," + std::to_string(e.where.node) + ")"};
    } catch (const Error& e) {
        return {3, std::string("error: ") + e.what()};
    }
}

}  // namespace drbsde
