#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drbsde/assumptions.hpp"
#include "drbsde/expression.hpp"
#include "drbsde/monotone_sequence.hpp"
#include "drbsde/penalization.hpp"
#include "drbsde/problem.hpp"

namespace drbsde {

enum class RunMode { solve, penalize, agree, compare, study, check, mokobodzki, monotone };

const char* mode_name(RunMode mode);
std::optional<RunMode> mode_from_name(const std::string& name);

/// One experiment: problem block, generator block, run block, output block.
/// Parsed from flat structured text (key = value lines under [section]
/// headers; '#' comments). Diagnostics name the offending section.key.
struct ExperimentConfig {
    // [problem]
    double horizon = 1.0;
    std::size_t steps = 50;
    double exponent = 2.0;
    std::optional<Expression> lower, upper;  // absent or "none" = unbounded
    std::optional<Expression> terminal;      // function of b (t is bound to T)
    PiecewiseLinear forcing = PiecewiseLinear::zero();

    // [problem2] (compare mode)
    std::optional<Expression> lower2, upper2, terminal2;
    std::optional<PiecewiseLinear> forcing2;

    // [generator]
    std::string generator_name = "zero";
    std::optional<std::string> part1, part2;  // decomposition names for infconv
    std::optional<std::string> generator2_name;

    // [run]
    RunMode mode = RunMode::solve;
    bool mode_given = false;
    std::uint64_t seed = 0;
    double tol = 1e-4;
    std::vector<double> penalty_schedule;     // default: doubling to n_max
    double n_max = 16384.0;
    PenaltyKind scheme = PenaltyKind::penalize_both;
    std::vector<std::size_t> grid_schedule;   // study; default {50, 100, 200}
    std::size_t samples = 10000;
    SampleBox box;
    std::optional<Expression> x_candidate;    // mokobodzki
    MonotoneDirection direction = MonotoneDirection::up;

    // [output]
    std::string out_dir = ".";
    bool write_csv = true;
    bool write_plot = false;

    std::vector<double> effective_schedule() const;
    ProblemData build_problem() const;
    ProblemData build_problem2() const;  // compare; falls back to the primary fields
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace drbsde
