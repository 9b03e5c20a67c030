#pragma once

#include <string>

#include "drbsde/config.hpp"

namespace drbsde {

struct ExperimentResult {
    int exit_code = 0;     // 0 ok, 2 theorem violation, 3 infeasible/invalid, 4 no convergence
    std::string summary;   // one line for standard output
};

/// Executes the configured mode and writes results.csv (plus optional plot
/// data) under cfg.out_dir. Never throws; failures are encoded in the exit
/// code and summary.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace drbsde
