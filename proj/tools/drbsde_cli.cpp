// Command-line front end: one experiment per invocation.
//
//   drbsde <mode> --config <path> [--out <dir>] [--seed <u64>]
//
// Modes: solve, penalize, agree, compare, study, check, mokobodzki,
// monotone. Exit codes: 0 success, 2 theorem-violation verdict,
// 3 infeasible/invalid configuration, 4 no convergence.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "drbsde/errors.hpp"
#include "drbsde/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"doubly reflected BSDE lattice laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;

    const char* mode_names[] = {"solve", "penalize", "agree",      "compare",
                                "study", "check",    "mokobodzki", "monotone"};
    for (const char* name : mode_names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
            seed_given = true;
        });
    }

    CLI11_PARSE(app, argc, argv);
    const std::string mode_arg = app.get_subcommands().front()->get_name();

    try {
        drbsde::ExperimentConfig cfg = drbsde::parse_config_file(config_path);
        const auto mode = drbsde::mode_from_name(mode_arg);
        if (cfg.mode_given && mode && cfg.mode != *mode)
            throw drbsde::InvalidArgumentError("config [run] mode conflicts with the subcommand");
        if (mode) cfg.mode = *mode;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_given) cfg.seed = seed;

        const drbsde::ExperimentResult result = drbsde::run_experiment(cfg);
        std::cout << result.summary << std::endl;
        return result.exit_code;
    } catch (const drbsde::Error& e) {
        std::cout << "error: " << e.what() << std::endl;
        return 3;
    }
}
